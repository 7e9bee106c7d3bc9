#include "triwalsh/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "triwalsh/kernels.hpp"
#include "triwalsh/lemmas.hpp"
#include "triwalsh/ops.hpp"
#include "triwalsh/parallel.hpp"

namespace triwalsh {

namespace {

struct RunConfig {
    std::string format = "csv";
    std::string output;
    unsigned threads = 0;
    bool no_timing = false;
    std::uint64_t seed = 1;
};

std::vector<std::uint64_t> parse_u64_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoull(tok));
    }
    if (out.empty()) throw CLI::ValidationError("empty integer list");
    return out;
}

std::string resolve_output(const std::string& path) {
    if (path.empty()) return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    const char* dir = std::getenv("TRIWALSH_OUT_DIR");
    if (dir && *dir) return (std::filesystem::path(dir) / p).string();
    return path;
}

int emit(const RunConfig& cfg, std::vector<LemmaReport> rows) {
    if (cfg.no_timing)
        for (auto& r : rows) r.ms = 0;
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!cfg.output.empty()) {
        std::string path = resolve_output(cfg.output);
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        out = &file;
    }
    if (cfg.format == "csv") {
        write_csv_header(*out);
        for (auto& r : rows) write_csv_row(*out, r);
    } else {
        write_json(*out, rows);
    }
    for (auto& r : rows)
        if (r.failed()) return 1;
    return 0;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--output,-o", cfg.output,
                    "output file (relative paths resolve under TRIWALSH_OUT_DIR); stdout if absent");
    sub->add_option("--threads", cfg.threads, "worker count; 0 = hardware");
    sub->add_flag("--no-timing", cfg.no_timing, "render the ms column as 0 (byte-stable output)");
    sub->add_option("--seed", cfg.seed, "seed for default random test functions")
        ->capture_default_str();
}

LemmaReport decompose_row(std::uint64_t n, int m) {
    auto terms = kernel_decomposition_terms(Nat(u128(n)), m);
    Grid2D total = zeros2(m);
    for (auto& [s, g] : terms) accumulate(total, g);
    Grid2D expect = tri_fejer(Nat(u128(n)), m);
    expect.den = 1;
    Grid2D diff = difference(total, expect);
    BigInt acc = 0;
    for (auto& x : diff.v) acc += to_bigint(abs128(x));
    LemmaReport r;
    r.lemma = "decompose";
    r.add_param("n", std::int64_t(n));
    r.add_param("terms", std::int64_t(terms.size()));
    r.measured = Rational(acc, to_bigint(diff.den) << (2 * m));
    r.bound = 0;
    r.ratio = 0;
    r.verdict = r.measured == 0 ? "pass" : "fail";
    return r;
}

}  // namespace

int cli_run(const std::vector<std::string>& args) {
    CLI::App app{"exact two-dimensional Walsh-Fourier analysis toolkit"};
    app.require_subcommand(0, 1);

    std::string config_path, dump_path;
    app.add_option("--config", config_path, "run a JSON file holding a list of invocations");
    app.add_option("--dump-config", dump_path, "write this invocation back out as a config file");

    RunConfig cfg;
    std::vector<LemmaReport> rows;

    // identities
    std::uint64_t id_nmax = 32;
    int id_res = 6;
    auto* c_id = app.add_subcommand("identities", "exact kernel/transform identity families");
    c_id->add_option("--n-max", id_nmax)->capture_default_str();
    c_id->add_option("--resolution", id_res)->capture_default_str();
    add_common(c_id, cfg);
    c_id->callback([&] {
        std::uint64_t fmax = std::min<std::uint64_t>(std::uint64_t(1) << id_res, 256);
        rows.push_back(identity_dirichlet_formula(fmax, id_res));
        rows.push_back(identity_triangular(id_nmax, std::max(id_res, min_resolution(Nat(u128(id_nmax))))));
        rows.push_back(identity_reflection(std::min(id_res, 8)));
        rows.push_back(identity_tri_spectral(id_nmax));
        rows.push_back(identity_tiling(id_nmax, std::max(id_res, min_resolution(Nat(u128(id_nmax))))));
        rows.push_back(identity_character_laws(std::min(id_res, 8)));
        rows.push_back(identity_nat_splits());
        rows.push_back(bound_tri_kernel_pointwise(id_nmax));
    });

    // delta1
    int d1_A = 3;
    bool d1_sweep = false;
    auto* c_d1 = app.add_subcommand("delta1", "maximal correlation integral of Lemma delta1");
    c_d1->add_option("--A", d1_A)->required();
    c_d1->add_flag("--sweep", d1_sweep, "run A = 0..A");
    add_common(c_d1, cfg);
    c_d1->callback([&] {
        int lo = d1_sweep ? 0 : d1_A;
        for (int A = lo; A <= d1_A; ++A) {
            Delta1Result res = delta1_integral(A, cfg.threads);
            rows.push_back(res.full);
            rows.push_back(res.special);
            rows.push_back(res.strict);
        }
    });

    // quadruples
    int q_A = 4;
    auto* c_q = app.add_subcommand("quadruples", "carry identity solution count");
    c_q->add_option("--A", q_A)->required();
    add_common(c_q, cfg);
    c_q->callback([&] {
        rows.push_back(quadruple_count(q_A, cfg.threads));
        if (q_A <= 4) rows.push_back(quadruple_l4_identity(q_A, cfg.threads));
    });

    // patterns
    int p_A = 8;
    auto* c_p = app.add_subcommand("patterns", "excluded block pattern forces carry mismatch");
    c_p->add_option("--A", p_A)->capture_default_str();
    add_common(c_p, cfg);
    c_p->callback([&] { rows.push_back(pattern_exclusion_check(p_A, cfg.threads)); });

    // corf
    int cf_t2 = 0, cf_s = 1;
    std::uint64_t cf_low = 0;
    auto* c_cf = app.add_subcommand("corf", "scaled block integral of F_{t2,s}");
    c_cf->add_option("--t2", cf_t2)->required();
    c_cf->add_option("--s", cf_s)->required();
    c_cf->add_option("--lowbits", cf_low)->capture_default_str();
    add_common(c_cf, cfg);
    c_cf->callback([&] { rows.push_back(corF_bound(cf_t2, cf_s, cf_low, cfg.threads)); });

    // marc
    int mc_s = 3, mc_t1 = -1, mc_t2 = -1;
    auto* c_mc = app.add_subcommand("marc", "maximal Dirichlet double sum on J_{t1} x J_{t2}");
    c_mc->add_option("--s", mc_s)->required();
    c_mc->add_option("--t1", mc_t1, "fix t1 (otherwise sweep all 0 <= t1 <= t2 < s)");
    c_mc->add_option("--t2", mc_t2, "fix t2");
    add_common(c_mc, cfg);
    c_mc->callback([&] {
        Grid2D sup = marc_sup_grid(mc_s, cfg.threads);
        if (mc_t1 >= 0 && mc_t2 >= 0) {
            rows.push_back(marc_integral_from(sup, mc_t1, mc_t2, mc_s));
        } else {
            for (int t1 = 0; t1 < mc_s; ++t1)
                for (int t2 = t1; t2 < mc_s; ++t2)
                    rows.push_back(marc_integral_from(sup, t1, t2, mc_s));
        }
    });

    // b1b2
    int bb_smax = 4;
    auto* c_bb = app.add_subcommand("b1b2", "exact additivity of the B1/B2 split");
    c_bb->add_option("--s-max", bb_smax)->capture_default_str();
    add_common(c_bb, cfg);
    c_bb->callback([&] {
        for (int s = 3; s <= bb_smax; ++s) rows.push_back(b1b2_exhaustive(s));
    });

    // decompose
    std::uint64_t dc_n = 0, dc_nmax = 0;
    int dc_res = -1;
    auto* c_dc = app.add_subcommand("decompose", "digit-block tiling sum equals n*K_n^tri");
    c_dc->add_option("--n", dc_n, "single n");
    c_dc->add_option("--n-max", dc_nmax, "sweep n = 1..n-max");
    c_dc->add_option("--resolution", dc_res, "grid resolution (default: minimal)");
    add_common(c_dc, cfg);
    c_dc->callback([&] {
        if (dc_n == 0 && dc_nmax == 0) throw CLI::ValidationError("decompose: give --n or --n-max");
        std::uint64_t lo = dc_n ? dc_n : 1;
        std::uint64_t hi = dc_n ? dc_n : dc_nmax;
        for (std::uint64_t n = lo; n <= hi; ++n) {
            int m = dc_res >= 0 ? dc_res : min_resolution(Nat(u128(hi)));
            rows.push_back(decompose_row(n, m));
        }
    });

    // supparts
    int sp_a = 1, sp_t1 = 0, sp_t2 = 0, sp_Amin = 1, sp_Amax = 3;
    std::string sp_variant = "t3";
    bool sp_sweep = false;
    auto* c_sp = app.add_subcommand("supparts", "digit-range parts of the maximal triangle kernel");
    c_sp->add_option("--a", sp_a)->capture_default_str();
    c_sp->add_option("--t1", sp_t1)->capture_default_str();
    c_sp->add_option("--t2", sp_t2)->capture_default_str();
    c_sp->add_option("--A-min", sp_Amin)->capture_default_str();
    c_sp->add_option("--A-max", sp_Amax)->capture_default_str();
    c_sp->add_option("--variant", sp_variant, "t1 | t2 | t3")
        ->check(CLI::IsMember({"t1", "t2", "t3"}));
    c_sp->add_flag("--sweep", sp_sweep, "sweep t1 <= min(a, t2), t2 <= A-max");
    add_common(c_sp, cfg);
    c_sp->callback([&] {
        std::vector<int> As;
        for (int A = sp_Amin; A <= sp_Amax; ++A) As.push_back(A);
        SupPartVariant v = sp_variant == "t1"   ? SupPartVariant::low
                           : sp_variant == "t2" ? SupPartVariant::mid
                                                : SupPartVariant::high;
        if (sp_sweep) {
            for (int t1 = 0; t1 <= sp_a; ++t1)
                for (int t2 = t1; t2 <= sp_Amax; ++t2)
                    rows.push_back(sup_kernel_parts(sp_a, t1, t2, As, v, cfg.threads));
        } else {
            rows.push_back(sup_kernel_parts(sp_a, sp_t1, sp_t2, As, v, cfg.threads));
        }
    });

    // yano
    int ya_t1 = 0, ya_s = 2, ya_smax = 0;
    bool ya_sweep = false;
    auto* c_ya = app.add_subcommand("yano", "support and size of K_{2^s} on J_{t1}");
    c_ya->add_option("--t1", ya_t1)->capture_default_str();
    c_ya->add_option("--s", ya_s)->capture_default_str();
    c_ya->add_flag("--sweep", ya_sweep, "all t1 < s <= s-max");
    c_ya->add_option("--s-max", ya_smax, "sweep upper bound (default: --s)");
    add_common(c_ya, cfg);
    c_ya->callback([&] {
        if (ya_sweep) {
            int cap = ya_smax > 0 ? ya_smax : ya_s;
            for (int s = 1; s <= cap; ++s)
                for (int t1 = 0; t1 < s; ++t1) rows.push_back(yano_check(t1, s));
        } else {
            rows.push_back(yano_check(ya_t1, ya_s));
        }
    });

    // mem
    int me_t1 = 0, me_A = 0;
    std::uint64_t me_N = 4;
    auto* c_me = app.add_subcommand("mem", "truncated maximal Fejer kernel integral on J_{t1}");
    c_me->add_option("--t1", me_t1)->capture_default_str();
    c_me->add_option("--A", me_A)->capture_default_str();
    c_me->add_option("--N", me_N)->capture_default_str();
    add_common(c_me, cfg);
    c_me->callback([&] { rows.push_back(mem_maximal_check(me_t1, me_A, me_N, cfg.threads)); });

    // supkernel
    int sk_a = 1;
    std::string sk_N = "8,16,32,64";
    auto* c_sk = app.add_subcommand("supkernel", "truncated maximal triangle kernel outside I_a^2");
    c_sk->add_option("--a", sk_a)->capture_default_str();
    c_sk->add_option("--N", sk_N, "comma list of truncation bounds")->capture_default_str();
    add_common(c_sk, cfg);
    c_sk->callback([&] {
        for (auto& r : sup_tri_kernel_trend(sk_a, parse_u64_list(sk_N), cfg.threads))
            rows.push_back(r);
    });

    // l1-table
    std::uint64_t l1_lo = 2, l1_hi = 64;
    auto* c_l1 = app.add_subcommand("l1-table", "exact L1 norms of the triangle Fejer kernels");
    c_l1->add_option("--n-min", l1_lo)->capture_default_str();
    c_l1->add_option("--n-max", l1_hi)->capture_default_str();
    add_common(c_l1, cfg);
    c_l1->callback([&] {
        Rational best = 0;
        std::uint64_t arg = l1_lo;
        for (std::uint64_t n = l1_lo; n <= l1_hi; ++n) {
            LemmaReport r = tri_kernel_l1_report(n, cfg.threads);
            if (r.measured > best) {
                best = r.measured;
                arg = n;
            }
            rows.push_back(std::move(r));
        }
        LemmaReport summary;
        summary.lemma = "l1-max";
        summary.add_param("n_min", std::int64_t(l1_lo));
        summary.add_param("n_max", std::int64_t(l1_hi));
        summary.add_param("argmax", std::int64_t(arg));
        summary.measured = best;
        summary.bound = 1;
        summary.set_ratio();
        summary.verdict = "report";
        rows.push_back(std::move(summary));
    });

    // quasi
    std::string qs_f;
    int qs_a = 2;
    std::string qs_N = "4,8,16,32,64";
    auto* c_qs = app.add_subcommand("quasi", "quasi-locality of the truncated maximal operator");
    c_qs->add_option("--f", qs_f, "test function (mini-language); default randomzero:<seed>:<a+3>:<a>");
    c_qs->add_option("--a", qs_a)->capture_default_str();
    c_qs->add_option("--N", qs_N, "comma list of truncation bounds")->capture_default_str();
    add_common(c_qs, cfg);
    c_qs->callback([&] {
        std::string spec = qs_f;
        if (spec.empty())
            spec = "randomzero:" + std::to_string(cfg.seed) + ':' + std::to_string(qs_a + 3) + ':' +
                   std::to_string(qs_a);
        TestFunction f = parse_test_function(spec);
        QuasiResult res = quasi_locality_check(f, qs_a, parse_u64_list(qs_N), cfg.threads);
        rows.push_back(res.vanishing);
        for (auto& r : res.ratios) rows.push_back(r);
    });

    // converge
    std::string cv_f;
    std::string cv_n = "4,8,16,32,64,128,256";
    std::string cv_norm = "l1";
    auto* c_cv = app.add_subcommand("converge", "exact error of the triangular Fejer means");
    c_cv->add_option("--f", cv_f, "test function (mini-language); default random:<seed>:5");
    c_cv->add_option("--n-list", cv_n)->capture_default_str();
    c_cv->add_option("--norm", cv_norm, "l1 | linf | linf-away")
        ->check(CLI::IsMember({"l1", "linf", "linf-away"}));
    add_common(c_cv, cfg);
    c_cv->callback([&] {
        std::string spec = cv_f.empty() ? "random:" + std::to_string(cfg.seed) + ":5" : cv_f;
        TestFunction f = parse_test_function(spec);
        ErrorNorm norm = cv_norm == "l1"     ? ErrorNorm::L1
                         : cv_norm == "linf" ? ErrorNorm::Linf
                                             : ErrorNorm::LinfAway;
        for (auto& row : convergence_experiment(f.grid, parse_u64_list(cv_n), norm, cfg.threads)) {
            LemmaReport r;
            r.lemma = "converge";
            r.add_param("f", f.descriptor);
            r.add_param("n", std::int64_t(row.n));
            r.add_param("norm", cv_norm);
            r.measured = row.error;
            r.bound = 0;
            r.ratio = 0;
            r.verdict = "report";
            rows.push_back(std::move(r));
        }
    });

    std::vector<const char*> argv;
    argv.push_back("triwalsh");
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (!dump_path.empty()) {
            nlohmann::json invocation = nlohmann::json::array();
            nlohmann::json one = nlohmann::json::array();
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (args[i] == "--dump-config") {
                    ++i;  // skip its value
                    continue;
                }
                one.push_back(args[i]);
            }
            invocation.push_back(one);
            std::ofstream out(resolve_output(dump_path));
            if (!out) throw std::runtime_error("cannot open config dump path");
            out << invocation.dump(2) << '\n';
        }

        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: cannot read config file " << config_path << '\n';
                return 2;
            }
            nlohmann::json doc = nlohmann::json::parse(in);
            if (!doc.is_array()) {
                std::cerr << "error: config must be a JSON array of argv arrays\n";
                return 2;
            }
            int worst = 0;
            for (auto& inv : doc) {
                std::vector<std::string> sub_args;
                for (auto& a : inv) sub_args.push_back(a.get<std::string>());
                worst = std::max(worst, cli_run(sub_args));
            }
            return worst;
        }

        if (app.get_subcommands().empty()) {
            std::cerr << app.help();
            return 2;
        }
        return emit(cfg, std::move(rows));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace triwalsh
