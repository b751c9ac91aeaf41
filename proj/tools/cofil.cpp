#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cofil/acceptance.hpp"
#include "cofil/frobkernel.hpp"
#include "cofil/growth.hpp"
#include "cofil/serialize.hpp"

using namespace cofil;
using nlohmann::json;

namespace {

// Shared knobs of a job.  Unknown
// flags are rejected by the parser, file inputs by the JSON readers.
struct Job {
    std::string model = "ga";
    uint32_t N = 3;
    uint32_t p = 2;
    uint32_t field_ext = 1;
    uint32_t cap = 0;
    uint32_t dmax = 10;
    uint32_t rmax = 3;
    uint32_t d = 1;   // Lang parameter for lang_ga
    uint32_t r = 1;   // Lang parameter for lang_un
    uint64_t seed = 2026;
    std::string family;
    std::string module_file;
    std::string out;
    std::string caps = "8,16,32";
    std::string vectors;
    uint32_t target_rank = 1;
    bool pretty = false;
    bool csv = false;
    bool check = false;
};

Field make_field(const Job& job) {
    return job.field_ext == 1 ? Field(job.p) : Field(job.p, job.field_ext);
}

ModelPtr make_model_kind(const Job& job, const std::string& kind_name, uint32_t cap) {
    ModelKind kind;
    if (kind_name == "ga") kind = ModelKind::Ga;
    else if (kind_name == "un") kind = ModelKind::UN;
    else if (kind_name == "gln") kind = ModelKind::GLN;
    else throw ValidationError("unknown model '" + kind_name + "' (use ga, un or gln)");
    return std::make_shared<FilteredHopfModel>(kind, make_field(job), cap, job.N);
}

ModelPtr make_model(const Job& job, uint32_t cap) { return make_model_kind(job, job.model, cap); }

std::shared_ptr<ModuleFamily> make_family(const Job& job, uint32_t cap) {
    if (!job.module_file.empty()) {
        std::ifstream in(job.module_file);
        if (!in) throw ValidationError("cannot open module file " + job.module_file);
        json j = json::parse(in);
        return std::make_shared<FixedComoduleFamily>(comodule_from_json(j));
    }
    const std::string& f = job.family;
    if (f == "regular_ga")
        return std::make_shared<RegularFamily>(make_model_kind(job, "ga", cap));
    if (f == "regular_un")
        return std::make_shared<RegularFamily>(make_model_kind(job, "un", cap));
    if (f == "lang_ga") {
        auto m = make_model_kind(job, "ga", cap);
        return std::make_shared<LangGaFamily>(m, job.d);
    }
    if (f == "lang_un") {
        auto m = make_model_kind(job, "un", cap);
        return std::make_shared<LangUnFamily>(m, job.r);
    }
    if (f == "quotient_ga") {
        auto m = make_model_kind(job, "ga", cap);
        auto reg = std::make_shared<RegularFamily>(m);
        auto jd = std::make_shared<LangGaFamily>(m, job.d);
        return std::make_shared<QuotientFamily>(reg, jd);
    }
    if (f == "primitives")
        return std::make_shared<PrimitivesFamily>(make_model_kind(job, "ga", cap));
    if (f == "primitives_mod_socle")
        return std::make_shared<PrimitivesModSocleFamily>(make_model_kind(job, "ga", cap));
    if (f == "trivial_constant")
        return std::make_shared<TrivialConstantFamily>(make_model_kind(job, "ga", cap));
    throw ValidationError("unknown family '" + f + "'");
}

void emit(const Job& job, const std::string& text) {
    if (job.out.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(job.out);
        if (!out) throw ValidationError("cannot write " + job.out);
        out << text << "\n";
    }
}

std::vector<uint32_t> parse_caps(const std::string& s) {
    std::vector<uint32_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back((uint32_t)std::stoul(tok));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact filtration, comodule and mock-injectivity computations for G_a, U_N, GL_N"};
    app.require_subcommand(1);
    Job job;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--p", job.p, "prime characteristic");
        cmd->add_option("--field-ext", job.field_ext, "extension degree of the ground field");
        cmd->add_option("--seed", job.seed, "seed for randomized cross-checks");
        cmd->add_option("--out", job.out, "write output to a file instead of stdout");
        cmd->add_flag("--pretty", job.pretty, "human-readable table instead of JSON");
    };

    auto* dims = app.add_subcommand("filtration-dims", "dimensions of O(G)_{<= d}");
    dims->add_option("--model", job.model, "ga, un or gln")->required();
    dims->add_option("--N", job.N, "matrix size for un/gln");
    dims->add_option("--dmax", job.dmax, "largest degree")->required();
    add_common(dims);

    auto* cof = app.add_subcommand("cofinite-type", "dimension sequence and fitted growth of a family");
    cof->add_option("--family", job.family, "regular_ga, regular_un, lang_ga, lang_un, quotient_ga, primitives, primitives_mod_socle, trivial_constant");
    cof->add_option("--module", job.module_file, "comodule JSON file instead of a named family");
    cof->add_option("--N", job.N, "matrix size for un families");
    cof->add_option("--d", job.d, "Lang parameter d (q = p^d)");
    cof->add_option("--r", job.r, "Lang parameter r for lang_un");
    cof->add_option("--dmax", job.dmax, "largest degree")->required();
    cof->add_option("--cap", job.cap, "override the model's filtration cap");
    cof->add_flag("--csv", job.csv, "emit the (d, dim) rows as CSV");
    cof->add_flag("--check", job.check,
                  "report per-degree cofiniteness across a window of caps instead of fitting");
    add_common(cof);

    auto* verd = app.add_subcommand("verdicts", "Frobenius-kernel freeness and injectivity verdicts");
    verd->add_option("--family", job.family, "named family");
    verd->add_option("--module", job.module_file, "comodule JSON file");
    verd->add_option("--d", job.d, "Lang parameter d");
    verd->add_option("--cap", job.cap, "override the model's filtration cap");
    verd->add_option("--rmax", job.rmax, "largest kernel height")->required();
    add_common(verd);

    auto* soc = app.add_subcommand("socle", "socle (= invariants) of a unipotent-model comodule");
    soc->add_option("--family", job.family, "named family");
    soc->add_option("--module", job.module_file, "comodule JSON file");
    soc->add_option("--d", job.d, "Lang parameter d");
    soc->add_option("--N", job.N, "matrix size for un families");
    soc->add_option("--cap", job.cap, "filtration cap of the examined piece")->required();
    add_common(soc);

    auto* subc = app.add_subcommand("subcoalgebra", "smallest subcoalgebra containing a subspace");
    subc->add_option("--model", job.model, "ga, un or gln")->required();
    subc->add_option("--N", job.N, "matrix size for un/gln");
    subc->add_option("--d", job.d, "filtration degree of the ambient coalgebra")->required();
    subc->add_option("--vectors", job.vectors,
                     "semicolon-separated coordinate rows over the filtration basis")->required();
    add_common(subc);

    auto* hom = app.add_subcommand("hom-probe", "hom-vanishing stabilization across caps");
    hom->add_option("--family", job.family, "named family")->required();
    hom->add_option("--d", job.d, "Lang parameter d");
    hom->add_option("--caps", job.caps, "comma-separated ascending caps");
    hom->add_option("--target-rank", job.target_rank, "rank of the trivial target module");
    add_common(hom);

    auto* verify = app.add_subcommand("verify-paper", "run the full verification matrix");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (dims->parsed()) {
            ModelPtr m = make_model(job, job.dmax);
            json rows = json::array();
            for (uint32_t dd = 0; dd <= job.dmax; ++dd)
                rows.push_back(json::array({dd, m->basis_size(dd)}));
            if (job.pretty) {
                std::ostringstream os;
                os << "d\tdim\n";
                for (uint32_t dd = 0; dd <= job.dmax; ++dd)
                    os << dd << "\t" << m->basis_size(dd) << "\n";
                emit(job, os.str());
            } else {
                json j;
                j["model"] = model_to_json(*m);
                j["dims"] = rows;
                emit(job, j.dump());
            }
        } else if (cof->parsed()) {
            uint32_t q = 1;
            for (uint32_t i = 0; i < job.d; ++i) q *= job.p;
            uint32_t cap = job.family == "lang_ga" || job.family == "quotient_ga"
                               ? std::max(job.dmax, q) + q
                               : (job.family == "lang_un" ? 3 * job.dmax : job.dmax);
            if (job.check) cap = std::max(cap, job.dmax + 12);
            if (job.cap) cap = job.cap;
            auto fam = make_family(job, cap);
            if (job.check) {
                uint32_t base = std::max(job.dmax + 2, 4u);
                auto recs = cofinite_check(*fam, job.dmax, {base, base + 4, base + 8});
                json rows = json::array();
                for (const auto& rec : recs) {
                    json rj;
                    rj["d"] = rec.d;
                    rj["cofinite"] = rec.cofinite;
                    rj["dims_at_caps"] = rec.dims_at_caps;
                    rows.push_back(rj);
                }
                json j;
                j["family"] = fam->name();
                j["records"] = rows;
                emit(job, j.dump());
                return 0;
            }
            auto seqd = dimension_sequence(*fam, job.dmax);
            auto prof = fit_cofinite_type(seqd);
            if (job.csv) emit(job, growth_profile_to_csv(prof));
            else if (job.pretty) {
                std::ostringstream os;
                os << "family " << fam->name() << "\nkind " << growth_kind_name(prof.kind);
                if (prof.kind == GrowthKind::Polynomial || prof.kind == GrowthKind::QuasiPolynomial)
                    os << "\ndegree " << prof.degree << "\nleading " << prof.leading.str()
                       << "\nperiod " << prof.period;
                if (!prof.note.empty()) os << "\nnote " << prof.note;
                emit(job, os.str());
            } else {
                json j = growth_profile_to_json(prof);
                j["family"] = fam->name();
                emit(job, j.dump());
            }
        } else if (verd->parsed()) {
            uint32_t q = 1;
            for (uint32_t i = 0; i < job.d; ++i) q *= job.p;
            uint32_t pr = 1;
            for (uint32_t i = 0; i < job.rmax; ++i) pr *= job.p;
            uint32_t cap = 2 * pr * std::max(q, 1u) + q;
            if (job.cap) cap = job.cap;
            auto fam = make_family(job, cap);
            json j;
            j["family"] = fam->name();
            auto mock = mock_injectivity_verdict(*fam, job.rmax, job.seed);
            j["support"] = support_report_to_json(mock);
            if (fam->model()->kind() == ModelKind::Ga) {
                auto inj = ga_injectivity_verdict(*fam, job.rmax, job.seed);
                j["injectivity"] = injectivity_verdict_to_json(inj);
            }
            if (job.pretty) {
                std::ostringstream os;
                os << "family " << fam->name() << "\nr\tfree\ttop_dim\tdefect\n";
                for (const auto& h : mock.per_height)
                    os << h.r << "\t" << (h.free ? "yes" : "no") << "\t" << h.top_dim << "\t"
                       << h.defect << "\n";
                os << "mock injective up to rmax: " << (mock.all_empty ? "yes" : "no");
                if (j.contains("injectivity"))
                    os << "\ninjective up to rmax: "
                       << (j["injectivity"]["injective"].get<bool>() ? "yes" : "no");
                emit(job, os.str());
            } else {
                emit(job, j.dump());
            }
        } else if (soc->parsed()) {
            auto fam = make_family(job, job.cap);
            Comodule piece = fam->piece(job.cap);
            Submodule s = socle_invariants(piece);
            json j;
            j["family"] = fam->name();
            j["cap"] = job.cap;
            j["dim"] = s.space.dim();
            json basis = json::array();
            for (const auto& v : s.space.basis()) {
                json row = json::array();
                for (FVal x : v) row.push_back(x);
                basis.push_back(row);
            }
            j["basis"] = basis;
            emit(job, j.dump());
        } else if (subc->parsed()) {
            ModelPtr m = make_model(job, job.d);
            FiniteCoalgebra c = filtration_coalgebra(*m, job.d);
            Subspace x(m->field(), c.dim());
            std::stringstream rows(job.vectors);
            std::string row;
            while (std::getline(rows, row, ';')) {
                Vec v;
                std::stringstream cells(row);
                std::string cell;
                while (std::getline(cells, cell, ',')) v.push_back((FVal)std::stoul(cell));
                if (v.size() != c.dim())
                    throw ValidationError("vector length " + std::to_string(v.size()) +
                                          " does not match ambient dimension " +
                                          std::to_string(c.dim()));
                x.add_vector(v);
            }
            Subspace w = generated_subcoalgebra(c, x);
            json j;
            j["ambient_dim"] = c.dim();
            j["dim"] = w.dim();
            json basis = json::array();
            for (const auto& v : w.basis()) {
                json rw = json::array();
                for (FVal t : v) rw.push_back(t);
                basis.push_back(rw);
            }
            j["basis"] = basis;
            emit(job, j.dump());
        } else if (hom->parsed()) {
            auto capslist = parse_caps(job.caps);
            uint32_t maxcap = 0;
            for (uint32_t c : capslist) maxcap = std::max(maxcap, c);
            auto fam = make_family(job, maxcap + 8);
            Comodule target = trivial_comodule(fam->model(), job.target_rank);
            auto rep = hom_vanishing_probe(*fam, target, capslist);
            json j = hom_probe_to_json(rep);
            j["family"] = fam->name();
            emit(job, j.dump());
        } else if (verify->parsed()) {
            auto results = run_acceptance(job.seed);
            int failures = 0;
            std::ostringstream os;
            for (const auto& r : results) {
                os << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  "
                   << r.title << "\n    " << r.details << "\n";
                if (!r.pass) ++failures;
            }
            os << results.size() << " criteria, " << failures << " failing";
            emit(job, os.str());
            if (failures) return 4;
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const CapOverflow& e) {
        std::cerr << "cap insufficiency: " << e.what() << "\n";
        return 3;
    } catch (const CrossCheckFailure& e) {
        std::cerr << "internal cross-check failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
