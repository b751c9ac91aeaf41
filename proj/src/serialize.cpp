#include "cofil/serialize.hpp"

#include <nlohmann/json.hpp>

#include "cofil/errors.hpp"

namespace cofil {

using nlohmann::json;

namespace {

void require_keys(const json& j, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) throw ValidationError("expected a JSON object");
    for (const char* k : required)
        if (!j.contains(k)) throw ValidationError(std::string("missing field '") + k + "'");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : required)
            if (it.key() == k) known = true;
        for (const char* k : optional)
            if (it.key() == k) known = true;
        if (!known) throw ValidationError("unknown field '" + it.key() + "'");
    }
}

}  // namespace

json model_to_json(const FilteredHopfModel& model) {
    json j;
    j["kind"] = kind_name(model.kind());
    j["p"] = model.field().p();
    j["ext"] = model.field().ext_degree();
    j["N"] = model.N();
    j["cap"] = model.cap();
    return j;
}

ModelPtr model_from_json(const json& j) {
    require_keys(j, {"kind", "p", "cap"}, {"ext", "N"});
    std::string kind = j.at("kind").get<std::string>();
    uint32_t p = j.at("p").get<uint32_t>();
    uint32_t ext = j.value("ext", 1u);
    uint32_t n = j.value("N", 0u);
    uint32_t cap = j.at("cap").get<uint32_t>();
    Field f = ext == 1 ? Field(p) : Field(p, ext);
    ModelKind k;
    if (kind == "ga") k = ModelKind::Ga;
    else if (kind == "un") k = ModelKind::UN;
    else if (kind == "gln") k = ModelKind::GLN;
    else throw ValidationError("unknown model kind '" + kind + "'");
    return std::make_shared<FilteredHopfModel>(k, f, cap, n);
}

json element_to_json(const FilteredHopfModel& model, const HopfElement& f) {
    json terms = json::array();
    for (const auto& [m, c] : f.terms) {
        json t;
        json exps = json::object();
        for (const auto& [v, e] : m.exps) exps[model.var_name(v)] = e;
        t["exps"] = exps;
        t["det"] = -(int64_t)m.det_neg;
        t["coeff"] = std::to_string(c);
        terms.push_back(t);
    }
    json j;
    j["terms"] = terms;
    return j;
}

HopfElement element_from_json(const FilteredHopfModel& model, const json& j) {
    require_keys(j, {"terms"});
    HopfElement f;
    for (const auto& t : j.at("terms")) {
        require_keys(t, {"exps", "coeff"}, {"det"});
        Monomial m;
        for (auto it = t.at("exps").begin(); it != t.at("exps").end(); ++it) {
            uint32_t e = it.value().get<uint32_t>();
            if (e) m.exps.emplace_back(model.var_by_name(it.key()), e);
        }
        std::sort(m.exps.begin(), m.exps.end());
        int64_t det = t.value("det", 0);
        if (det > 0) throw ValidationError("det power must be <= 0");
        m.det_neg = (uint32_t)(-det);
        FVal c = (FVal)std::stoul(t.at("coeff").get<std::string>());
        if (c >= model.field().q()) throw ValidationError("coefficient out of range");
        f = model.add(f, model.monomial(m, c));
    }
    return model.canonicalize(f);
}

json coalgebra_to_json(const FiniteCoalgebra& c) {
    json j;
    j["dim"] = c.dim();
    json delta = json::array();
    for (size_t i = 0; i < c.dim(); ++i)
        for (const auto& [a, b, v] : c.delta[i])
            delta.push_back(json::array({i, a, b, std::to_string(v)}));
    j["delta"] = delta;
    json counit = json::array();
    for (FVal v : c.counit) counit.push_back(std::to_string(v));
    j["counit"] = counit;
    return j;
}

json comodule_to_json(const Comodule& m) {
    json j;
    j["model"] = model_to_json(*m.model());
    j["dim"] = m.dim();
    j["ambient_degree"] = m.ambient_degree();
    json rho = json::array();
    for (const auto& [a, b, jj, c] : m.entries())
        rho.push_back(json::array({a, b, jj, std::to_string(c)}));
    j["rho"] = rho;
    return j;
}

Comodule comodule_from_json(const json& j) {
    require_keys(j, {"model", "dim", "ambient_degree", "rho"});
    ModelPtr model = model_from_json(j.at("model"));
    Comodule m(model, j.at("dim").get<uint32_t>(), j.at("ambient_degree").get<uint32_t>());
    for (const auto& e : j.at("rho")) {
        if (!e.is_array() || e.size() != 4) throw ValidationError("rho entries are [a,b,j,coeff]");
        m.add_entry(e[0].get<uint32_t>(), e[1].get<uint32_t>(), e[2].get<uint32_t>(),
                    (FVal)std::stoul(e[3].get<std::string>()));
    }
    m.finalize();
    m.verify();
    return m;
}

json operator_module_to_json(const GaOperatorModule& m) {
    json j;
    j["p"] = m.field.p();
    j["ext"] = m.field.ext_degree();
    j["dim"] = m.dim();
    json psi = json::array();
    for (const auto& u : m.psi) {
        json rows = json::array();
        for (size_t r = 0; r < u.rows(); ++r) {
            json row = json::array();
            for (size_t c = 0; c < u.cols(); ++c) row.push_back(u.at(r, c));
            rows.push_back(row);
        }
        psi.push_back(rows);
    }
    j["psi"] = psi;
    return j;
}

GaOperatorModule operator_module_from_json(const json& j) {
    require_keys(j, {"p", "psi"}, {"dim", "ext"});
    uint32_t p = j.at("p").get<uint32_t>();
    uint32_t ext = j.value("ext", 1u);
    Field f = ext == 1 ? Field(p) : Field(p, ext);
    std::vector<Matrix> psi;
    size_t dim = j.value("dim", 0u);
    for (const auto& mj : j.at("psi")) {
        size_t rows = mj.size();
        if (dim == 0) dim = rows;
        Matrix u(f, rows, rows);
        for (size_t r = 0; r < rows; ++r) {
            if (mj[r].size() != rows) throw ValidationError("operator matrices must be square");
            for (size_t c = 0; c < rows; ++c) u.at(r, c) = mj[r][c].get<FVal>();
        }
        psi.push_back(std::move(u));
    }
    if (dim == 0 && !j.contains("dim"))
        throw ValidationError("an operator module without operators needs an explicit dim");
    return GaOperatorModule(f, dim, psi);
}

json growth_profile_to_json(const GrowthProfile& p) {
    json j;
    j["kind"] = growth_kind_name(p.kind);
    if (p.kind == GrowthKind::Polynomial || p.kind == GrowthKind::QuasiPolynomial) {
        j["degree"] = p.degree;
        j["leading"] = p.leading.str();
        j["period"] = p.period;
    }
    j["window"] = p.window;
    if (!p.note.empty()) j["note"] = p.note;
    json dims = json::array();
    for (const auto& [d, v] : p.dims) dims.push_back(json::array({d, v}));
    j["dims"] = dims;
    return j;
}

std::string growth_profile_to_csv(const GrowthProfile& p) {
    std::string out = "d,dim\n";
    for (const auto& [d, v] : p.dims)
        out += std::to_string(d) + "," + std::to_string(v) + "\n";
    return out;
}

namespace {

json height_to_json(const HeightRecord& h) {
    json j;
    j["r"] = h.r;
    j["cap"] = h.cap;
    j["free"] = h.free;
    j["top_dim"] = h.top_dim;
    j["defect"] = h.defect;
    json w = json::array();
    for (const auto& alpha : h.witnesses) {
        json a = json::array();
        for (FVal v : alpha) a.push_back(v);
        w.push_back(a);
    }
    j["witnesses"] = w;
    return j;
}

}  // namespace

json support_report_to_json(const SupportReport& r) {
    json j;
    j["rmax"] = r.rmax;
    json hs = json::array();
    for (const auto& h : r.per_height) hs.push_back(height_to_json(h));
    j["per_height"] = hs;
    j["mock_injective"] = r.all_empty;
    j["first_failing_r"] = r.first_failing_r;
    return j;
}

json injectivity_verdict_to_json(const InjectivityVerdict& v) {
    json j;
    j["rmax"] = v.rmax;
    j["injective"] = v.injective;
    j["witness_r"] = v.witness_r;
    json hs = json::array();
    for (const auto& h : v.per_height) hs.push_back(height_to_json(h));
    j["per_height"] = hs;
    return j;
}

json hom_probe_to_json(const HomProbeReport& r) {
    json j;
    j["caps"] = r.caps;
    j["hom_dims"] = r.hom_dims;
    j["stabilized_image_dim"] = r.stabilized_image_dim;
    j["vanished"] = r.vanished;
    return j;
}

}  // namespace cofil
