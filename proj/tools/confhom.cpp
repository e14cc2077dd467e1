// confhom: exact homology of configuration spaces of a one-boundary surface.
//
// Subcommands: betti, nui, barcode, ext, mcg, verify. Exit codes: 0 on
// success, 1 on a discrepancy or verification failure, 2 on usage errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "confhom/betti.hpp"
#include "confhom/mcg.hpp"
#include "confhom/verify.hpp"
#include "confhom/yoneda.hpp"

using json = nlohmann::ordered_json;
using namespace confhom;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr i64 kDefaultRecordCap = 5'000'000;

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("CONFHOM_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    return hw > 0 ? hw : 1;
}

json envelope(const std::string& command, json config, json bounds) {
    json env;
    env["version"] = kVersion;
    env["command"] = command;
    env["config"] = std::move(config);
    env["bounds"] = std::move(bounds);
    return env;
}

json barcode_json(const Barcode& bc) {
    json bars = json::array();
    for (const auto& [bar, mult] : bc.bars)
        for (i64 c = 0; c < mult; ++c) bars.push_back({bar.first, bar.second});
    return bars;
}

json exterior_json(const ExteriorClass& e) {
    json out = json::array();
    for (const auto& [t, c] : e.terms()) out.push_back({{"gens", t}, {"coeff", c}});
    return out;
}

struct CoeffChoice {
    CoefficientRing ring = CoefficientRing::rationals();
    std::string label = "q";
};

// --coeff fp|q|f2|z with --p for fp; a bare --p implies fp.
CoeffChoice parse_coeff(const std::string& coeff, i64 p, bool p_given) {
    CoeffChoice out;
    std::string c = coeff;
    if (c.empty()) c = p_given ? "fp" : "q";
    out.label = c;
    if (c == "q") {
        out.ring = CoefficientRing::rationals();
    } else if (c == "z") {
        out.ring = CoefficientRing::integers();
    } else if (c == "f2") {
        out.ring = CoefficientRing::prime_field(2);
    } else if (c == "fp") {
        if (!p_given) throw CLI::ValidationError("--coeff fp requires --p");
        out.ring = CoefficientRing::prime_field(p);
        out.label = "f" + std::to_string(p);
    } else {
        throw CLI::ValidationError("--coeff must be one of fp, q, f2, z");
    }
    return out;
}

void emit(const json& out, const std::string& path) {
    if (path.empty()) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::ofstream f(path);
        f << out.dump(2) << "\n";
    }
}

int cmd_betti(int genus, const CoeffChoice& coeff, int max_n, const std::string& pipeline,
              const std::string& format, int threads, i64 record_cap, const std::string& out_path) {
    bool structured_capable = coeff.ring.kind == RingKind::Rationals ||
                              (coeff.ring.kind == RingKind::PrimeField && coeff.ring.p != 2);
    std::string pipe = pipeline;
    if (pipe.empty()) pipe = structured_capable ? "both" : "cellular";
    if ((pipe == "structured" || pipe == "both") && !structured_capable)
        throw CLI::ValidationError("the structured pipeline supports odd F_p and Q; use "
                                   "--pipeline cellular for " + coeff.label);

    if (pipe != "structured") {
        i64 est = count_records_up_to(genus, max_n);
        if (est > record_cap) {
            std::cerr << "confhom: the cellular run would enumerate about " << est
                      << " records, above the cap of " << record_cap
                      << "; raise --max-records to proceed\n";
            return 2;
        }
    }

    HomologyTable cell, structured;
    if (pipe == "cellular" || pipe == "both")
        cell = cellular_betti({genus, coeff.ring, max_n, threads, false});
    if (pipe == "structured" || pipe == "both")
        structured = theoremB_betti(genus, coeff.ring, max_n);
    const HomologyTable& table = pipe == "structured" ? structured : cell;

    std::vector<Discrepancy> discrepancies;
    if (pipe == "both") discrepancies = compare_tables(cell, structured, max_n);

    if (format == "csv") {
        std::ostringstream os;
        os << "g,p,coeff,n,i,dim,torsion\n";
        for (int n = 0; n <= max_n; ++n)
            for (int i = 0; i <= n; ++i) {
                auto e = table.at(n, i);
                if (e.dim == 0 && e.torsion.empty()) continue;
                os << genus << "," << (coeff.ring.kind == RingKind::PrimeField ? std::to_string(coeff.ring.p) : "")
                   << "," << coeff.label << "," << n << "," << i << "," << e.dim << ",";
                for (size_t t = 0; t < e.torsion.size(); ++t)
                    os << (t ? ";" : "") << e.torsion[t];
                os << "\n";
            }
        if (out_path.empty())
            std::cout << os.str();
        else
            std::ofstream(out_path) << os.str();
    } else {
        json env = envelope("betti",
                            {{"g", genus},
                             {"coeff", coeff.label},
                             {"p", coeff.ring.kind == RingKind::PrimeField ? json(coeff.ring.p) : json()},
                             {"pipeline", pipe}},
                            {{"max_n", max_n}});
        json rows = json::array();
        for (int n = 0; n <= max_n; ++n)
            for (int i = 0; i <= n; ++i) {
                auto e = table.at(n, i);
                if (e.dim == 0 && e.torsion.empty()) continue;
                json row = {{"n", n}, {"i", i}, {"dim", e.dim}};
                if (coeff.ring.kind == RingKind::Integers) row["torsion"] = e.torsion;
                row["provenance"] = pipe;
                rows.push_back(std::move(row));
            }
        env["rows"] = std::move(rows);
        json dj = json::array();
        for (const auto& d : discrepancies)
            dj.push_back({{"n", d.n}, {"i", d.i}, {"detail", d.detail}});
        env["discrepancies"] = std::move(dj);
        emit(env, out_path);
    }
    if (!discrepancies.empty()) {
        std::cerr << "confhom: " << discrepancies.size() << " cross-pipeline discrepancies\n";
        return 1;
    }
    return 0;
}

int cmd_nui(int u, i64 p, const std::string& out_path) {
    auto entries = compute_Nui(u, p, false);
    bool identity = nui_poincare_identity(u, p, entries);
    json env = envelope("nui", {{"u", u}, {"p", p}}, json::object());
    json per_stage = json::object();
    for (const auto& e : entries) per_stage[std::to_string(e.stage)] = barcode_json(e.bars);
    env["barcodes"] = std::move(per_stage);
    env["stage_bound"] = theoremC_stage_bound(u, p);
    env["poincare_identity"] = identity;
    emit(env, out_path);
    return identity ? 0 : 1;
}

int cmd_barcode(int u, i64 p, int stage, const std::string& out_path) {
    auto entries = compute_Nui(u, p, false);
    json env = envelope("barcode", {{"u", u}, {"p", p}, {"i", stage}}, json::object());
    env["bars"] = json::array();
    for (const auto& e : entries)
        if (e.stage == stage) env["bars"] = barcode_json(e.bars);
    emit(env, out_path);
    return 0;
}

int cmd_ext(int u, i64 p, int max_weight, int max_bar, bool with_oracle, int threads,
            const std::string& out_path) {
    auto assembled = theoremC_assemble(u, p, max_weight, -max_bar);
    json env = envelope("ext", {{"u", u}, {"p", p}, {"oracle", with_oracle}},
                        {{"max_weight", max_weight}, {"max_bar", -max_bar}});
    json rows = json::array();
    for (const auto& [k, d] : assembled.series.dims)
        rows.push_back({{"weight", k.first}, {"bar", k.second}, {"dim", d}});
    env["rows"] = std::move(rows);
    json summands = json::array();
    for (const auto& s : assembled.summands) {
        json gens = json::array();
        for (auto [w, b] : s.generators(p)) gens.push_back({w, b});
        summands.push_back({{"stage", s.stage},
                            {"bar_start", s.start},
                            {"bar_size", s.size},
                            {"free", s.free_type(p)},
                            {"generators", gens}});
    }
    env["summands"] = std::move(summands);
    int status = 0;
    if (with_oracle) {
        auto oracle = cobar_ext_dims(build_Bu(u, p, false), max_weight, -max_bar, threads);
        json dj = json::array();
        for (int w = 0; w <= max_weight; ++w)
            for (int b = -max_bar; b <= 0; ++b)
                if (assembled.series.at(w, b) != oracle.at(w, b))
                    dj.push_back({{"weight", w},
                                  {"bar", b},
                                  {"assembled", assembled.series.at(w, b)},
                                  {"oracle", oracle.at(w, b)}});
        env["discrepancies"] = dj;
        if (!dj.empty()) status = 1;
    }
    emit(env, out_path);
    return status;
}

int cmd_mcg(int genus, const std::string& file, i64 p, bool chain_check, int weight_bound,
            const std::string& out_path) {
    std::string text;
    {
        std::ifstream f(file);
        if (!f) {
            std::cerr << "confhom: cannot open candidate file " << file << "\n";
            return 2;
        }
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    std::vector<MappingClassCandidate> candidates;
    try {
        candidates = parse_candidate_file(text, genus);
    } catch (const std::exception& e) {
        std::cerr << "confhom: " << e.what() << "\n";
        return 2;
    }
    json env = envelope("mcg",
                        {{"g", genus}, {"p", p}, {"file", file}, {"chain_check", chain_check},
                         {"weight_bound", weight_bound}},
                        json::object());
    json out = json::array();
    for (const auto& cand : candidates) {
        json c;
        c["name"] = cand.label;
        auto val = validate(cand.phi, genus);
        c["validation"] = {{"boundary_conjugate", val.boundary_conjugate},
                           {"boundary_strict", val.boundary_strict},
                           {"omega_preserved", val.omega_preserved}};
        XiValue x = xi(cand.phi);
        json xj = json::array(), xpj = json::array();
        for (const auto& col : x.columns) xj.push_back(exterior_json(col));
        for (const auto& col : x.reduced_mod(p).columns) xpj.push_back(exterior_json(col));
        c["xi"] = std::move(xj);
        c["xi_mod_p"] = std::move(xpj);
        if (chain_check) {
            auto rep = check_umor_triviality(cand.phi, p, weight_bound);
            c["chain_triviality"] = {{"preconditions", rep.preconditions()},
                                     {"trivial", rep.preconditions() && rep.trivial},
                                     {"detail", rep.detail}};
        }
        out.push_back(std::move(c));
    }
    env["candidates"] = std::move(out);
    emit(env, out_path);
    return 0;
}

int cmd_verify(const std::string& suite, int threads, bool as_json, const std::string& out_path) {
    VerifyOptions opt;
    opt.full = suite == "full";
    opt.threads = threads;
    auto results = run_acceptance(opt);
    int failures = 0;
    json rows = json::array();
    for (const auto& r : results) {
        const char* tag = r.pass ? "PASS" : (r.hard ? "FAIL" : "WARN");
        if (!as_json)
            std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", tag, r.id, r.name.c_str(),
                        r.seconds, r.detail.empty() ? "" : " -- ", r.detail.c_str());
        rows.push_back({{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"hard", r.hard},
                        {"seconds", r.seconds},
                        {"detail", r.detail}});
        if (!r.pass && r.hard) ++failures;
    }
    if (as_json) {
        json env = envelope("verify", {{"suite", suite}}, json::object());
        env["results"] = std::move(rows);
        env["failures"] = failures;
        emit(env, out_path);
    }
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact homology of configuration spaces of a genus-g one-boundary surface"};
    app.set_version_flag("--version", std::string("confhom ") + kVersion);
    app.require_subcommand(1);

    // betti
    auto* betti = app.add_subcommand("betti", "bigraded homology table H_i(C_n)");
    int genus = 0, max_n = 4, threads_flag = 0;
    i64 p = 0, record_cap = kDefaultRecordCap;
    std::string coeff, pipeline, format = "json", out_path;
    betti->add_option("--g", genus, "genus")->required()->check(CLI::Range(0, 16));
    betti->add_option("--p", p, "prime for F_p coefficients");
    betti->add_option("--coeff", coeff, "coefficients: fp, q, f2, z");
    betti->add_option("--max-n", max_n, "largest number of points")->required()
        ->check(CLI::Range(0, 64));
    betti->add_option("--pipeline", pipeline, "cellular, structured, or both")
        ->check(CLI::IsMember({"cellular", "structured", "both"}));
    betti->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    betti->add_option("--threads", threads_flag, "worker threads (default: CONFHOM_THREADS or hardware)");
    betti->add_option("--max-records", record_cap, "memory guard: refuse larger cellular runs");
    betti->add_option("--out", out_path, "write the table to a file instead of stdout");

    // nui
    auto* nui = app.add_subcommand("nui", "barcodes of the modules N_{u,i}");
    int u = 0;
    i64 up = 3;
    std::string nui_out;
    nui->add_option("--u", u, "number of handles entering B_u")->required()->check(CLI::Range(0, 16));
    nui->add_option("--p", up, "odd prime")->required();
    nui->add_option("--out", nui_out, "output file");

    // barcode
    auto* bar = app.add_subcommand("barcode", "barcode of a single N_{u,i}");
    int bu = 0, bstage = 0;
    i64 bp = 3;
    std::string bar_out;
    bar->add_option("--u", bu, "u")->required()->check(CLI::Range(0, 16));
    bar->add_option("--p", bp, "odd prime")->required();
    bar->add_option("--i", bstage, "stage i")->required()->check(CLI::Range(0, 8));
    bar->add_option("--out", bar_out, "output file");

    // ext
    auto* ext = app.add_subcommand("ext", "bigraded Ext(B_u) dimensions");
    int eu = 0, emaxw = 20, emaxb = 8, ethreads = 0;
    i64 ep = 3;
    bool oracle = false;
    std::string ext_out;
    ext->add_option("--u", eu, "u")->required()->check(CLI::Range(0, 12));
    ext->add_option("--p", ep, "odd prime")->required();
    ext->add_option("--max-weight", emaxw, "weight bound");
    ext->add_option("--max-bar", emaxb, "bar-degree bound (positive number of columns)");
    ext->add_flag("--oracle", oracle, "cross-check against the cobar oracle");
    ext->add_option("--threads", ethreads, "worker threads for the oracle");
    ext->add_option("--out", ext_out, "output file");

    // mcg
    auto* mcg = app.add_subcommand("mcg", "validate candidates and compute xi invariants");
    int mg = 1, mweight = 8, mthreads = 0;
    i64 mp = 3;
    bool chain_check = false;
    std::string mfile, mcg_out;
    mcg->add_option("--g", mg, "genus")->required()->check(CLI::Range(1, 8));
    mcg->add_option("--file", mfile, "candidate file")->required();
    mcg->add_option("--p", mp, "prime for xi mod p");
    mcg->add_flag("--check-chain-triviality", chain_check, "run the mod-p chain triviality check");
    mcg->add_option("--weight-bound", mweight, "weight bound for the triviality check");
    mcg->add_option("--threads", mthreads, "unused; accepted for symmetry");
    mcg->add_option("--out", mcg_out, "output file");

    // verify
    auto* verify = app.add_subcommand("verify", "run the acceptance suites");
    std::string suite = "fast", verify_out;
    int vthreads = 0;
    bool vjson = false;
    verify->add_option("suite", suite, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    verify->add_option("--threads", vthreads, "worker threads");
    verify->add_flag("--json", vjson, "machine-readable report");
    verify->add_option("--out", verify_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (betti->parsed()) {
            auto choice = parse_coeff(coeff, p, betti->count("--p") > 0);
            return cmd_betti(genus, choice, max_n, pipeline, format,
                             resolve_threads(threads_flag), record_cap, out_path);
        }
        if (nui->parsed()) {
            if (!is_prime(up) || up == 2) throw CLI::ValidationError("--p must be an odd prime");
            return cmd_nui(u, up, nui_out);
        }
        if (bar->parsed()) {
            if (!is_prime(bp) || bp == 2) throw CLI::ValidationError("--p must be an odd prime");
            return cmd_barcode(bu, bp, bstage, bar_out);
        }
        if (ext->parsed()) {
            if (!is_prime(ep) || ep == 2) throw CLI::ValidationError("--p must be an odd prime");
            return cmd_ext(eu, ep, emaxw, emaxb, oracle, resolve_threads(ethreads), ext_out);
        }
        if (mcg->parsed()) {
            if (!is_prime(mp)) throw CLI::ValidationError("--p must be prime");
            return cmd_mcg(mg, mfile, mp, chain_check, mweight, mcg_out);
        }
        if (verify->parsed()) return cmd_verify(suite, resolve_threads(vthreads), vjson, verify_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "confhom: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "confhom: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "confhom: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
