// Command-line driver: prints assistance measures for a state/partition,
// emits figure data as CSV, certifies closed forms against the sampling
// oracle, runs randomized property sweeps, and reports admissible parameter
// windows with optional point evaluations of the two-term bounds.
//
// Exit codes: 0 success, 1 assertion/certification failure, 2 usage or
// input-parse error.  All numeric output uses 12 significant digits and is
// byte-identical across runs for a fixed invocation.

#include "CLI11.hpp"

#include "gwm/bounds.hpp"
#include "gwm/figures.hpp"
#include "gwm/fuzz.hpp"
#include "gwm/gw_states.hpp"
#include "gwm/io.hpp"
#include "gwm/measures.hpp"
#include "gwm/oracle.hpp"
#include "gwm/rng.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt_interval(const gwm::Interval& iv) {
    if (iv.empty)
        return "empty";
    if (iv.unbounded)
        return "[" + fmt12(iv.lo) + ", inf)";
    return "[" + fmt12(iv.lo) + ", " + fmt12(iv.hi) + "]";
}

/// Writes `text` to `path`, or to standard output when path is empty.
void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error(path + ": cannot open for writing");
    out << text;
}

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t points = 0;
};

/// Parses "a:b:n" (n >= 2).  An empty string returns the fallback.
GridSpec parse_grid(const std::string& text, GridSpec fallback) {
    if (text.empty())
        return fallback;
    GridSpec g;
    char tail = 0;
    unsigned long long n = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%llu%c", &g.lo, &g.hi, &n, &tail) !=
            3 ||
        n < 2)
        throw std::runtime_error("--grid expects a:b:n with n >= 2, got \"" +
                                 text + "\"");
    g.points = static_cast<std::size_t>(n);
    return g;
}

// ---------------------------------------------------------------------------
// measure: assistance values (and Tsallis-q assistance) for a partition
// ---------------------------------------------------------------------------

int cmd_measure(const std::string& state_file, const std::string& part_file,
                double q, const std::string& out_path) {
    const gwm::GWStateSpec spec = gwm::load_state_spec(state_file);
    const gwm::Partition part = gwm::load_partition(part_file, spec.n);
    const gwm::PartyWeights w = gwm::party_weights(spec, part);
    const std::size_t m = part.parties.size();

    std::ostringstream os;
    os << "quantity,value\n";
    auto row = [&](const std::string& name, double value) {
        os << name << ',' << fmt12(value) << '\n';
    };
    for (std::size_t t = 0; t < m; ++t)
        row("weight(" + std::to_string(t + 1) + ")", w[t]);
    for (std::size_t t = 0; t < m; ++t)
        for (std::size_t l = t + 1; l < m; ++l)
            row("ca_pair(" + std::to_string(t + 1) + "," +
                    std::to_string(l + 1) + ")",
                gwm::coa_pair_gw(w, t, l));
    for (std::size_t t = 0; t < m && m > 1; ++t)
        row("ca_one_vs_rest(" + std::to_string(t + 1) + ")",
            gwm::coa_one_vs_rest_gw(w, t));
    for (std::size_t t = 0; t < m; ++t)
        for (std::size_t l = t + 1; l < m; ++l)
            row("tqa_pair(" + std::to_string(t + 1) + "," +
                    std::to_string(l + 1) + ",q=" + fmt12(q) + ")",
                gwm::tqeeoa_pair_gw(w, t, l, q));
    for (std::size_t t = 0; t < m && m > 1; ++t)
        row("tqa_one_vs_rest(" + std::to_string(t + 1) + ",q=" + fmt12(q) +
                ")",
            gwm::tqeeoa_gw(w, t, q));
    emit(os.str(), out_path);
    return 0;
}

// ---------------------------------------------------------------------------
// figure: CSV sweep data
// ---------------------------------------------------------------------------

int cmd_figure(const std::string& which, const std::string& grid_text,
               double gamma, double omega, double ell, double delta, double k,
               const std::string& out_path) {
    const bool have_gamma = !std::isnan(gamma);
    const bool have_omega = !std::isnan(omega);
    const bool have_ell = !std::isnan(ell);
    gwm::SweepTable tab;
    if (which == "fig1") {
        const GridSpec g = parse_grid(grid_text, {2.0, 5.0, 61});
        tab = gwm::fig1_table(g.points, g.lo, g.hi,
                              have_gamma ? gamma : 2.0,
                              have_omega ? omega : 1.0, have_ell ? ell : 1.3,
                              std::isnan(delta) ? 1.3 : delta);
    } else if (which == "fig2") {
        const GridSpec g = parse_grid(grid_text, {0.0, 1.5, 61});
        tab = gwm::fig2_table(g.points, g.lo, g.hi,
                              have_gamma ? gamma : 3.0,
                              have_omega ? omega : 9.0 / 8.0,
                              have_ell ? ell : 3.0 / 4.0,
                              std::isnan(k) ? 4.0 / 3.0 : k);
    } else if (which == "fig3" || which == "fig4") {
        // Axis ranges are pinned to the validity intervals; the grid flag
        // sets the point count of both axes.
        const GridSpec g = parse_grid(grid_text, {0.0, 0.0, 40});
        tab = which == "fig3" ? gwm::fig3_table(g.points, g.points)
                              : gwm::fig4_table(g.points, g.points);
    } else if (which == "fig5") {
        const GridSpec g = parse_grid(grid_text, {0.0, 0.0, 100});
        tab = gwm::fig5_table(g.points);
    } else {
        throw std::runtime_error("figure: unknown target \"" + which +
                                 "\" (expected fig1..fig5)");
    }
    emit(gwm::format_csv(tab), out_path);
    return 0;
}

// ---------------------------------------------------------------------------
// certify: closed forms vs the sampling oracle
// ---------------------------------------------------------------------------

void append_report(std::ostringstream& os, const gwm::CertifyReport& rep) {
    for (const gwm::CertifyCheck& c : rep.checks)
        os << (c.pass ? "ok   " : "FAIL ") << c.name
           << ": expected=" << fmt12(c.expected) << " got=" << fmt12(c.got)
           << (c.lower_only ? " bracket_tol=" : " tol=") << fmt12(c.tol)
           << '\n';
}

int cmd_certify(const std::string& state_file, const std::string& part_file,
                std::size_t random_count, std::size_t d, std::size_t n,
                std::uint64_t seed, std::size_t trials,
                const std::string& out_path) {
    gwm::SamplingConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    std::ostringstream os;
    bool pass = true;
    std::size_t checks = 0;

    if (random_count > 0) {
        for (std::uint64_t i = 0; i < random_count; ++i) {
            gwm::SplitMix64 rng(gwm::derive_seed(seed, i));
            const gwm::GWStateSpec spec = gwm::random_gw_spec(rng, d, n);
            const std::size_t parties = 2 + i % (n - 1); // 2..n
            const gwm::Partition part =
                gwm::random_partition(rng, n, parties, i % 2 == 0);
            const gwm::CertifyReport rep =
                gwm::certify_gw_closed_forms(spec, part, cfg);
            checks += rep.checks.size();
            pass = pass && rep.pass;
            os << "spec " << i << " (d=" << d << ", n=" << n << ", parties="
               << parties << "): " << (rep.pass ? "pass" : "FAIL") << " ("
               << rep.checks.size() << " checks)\n";
            if (!rep.pass)
                append_report(os, rep);
        }
    } else {
        if (state_file.empty() || part_file.empty())
            throw std::runtime_error(
                "certify needs --state and --partition, or --random N");
        const gwm::GWStateSpec spec = gwm::load_state_spec(state_file);
        const gwm::Partition part = gwm::load_partition(part_file, spec.n);
        const gwm::CertifyReport rep =
            gwm::certify_gw_closed_forms(spec, part, cfg);
        checks = rep.checks.size();
        pass = rep.pass;
        append_report(os, rep);
    }
    os << "certify: " << (pass ? "PASS" : "FAIL") << " (" << checks
       << " checks)\n";
    emit(os.str(), out_path);
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// fuzz: randomized property sweeps
// ---------------------------------------------------------------------------

int cmd_fuzz(const std::string& target, std::size_t count, std::uint64_t seed,
             const std::string& out_path) {
    std::vector<gwm::FuzzOutcome> outcomes;
    auto want = [&](const std::string& name) {
        return target == "all" || target == name;
    };
    for (int k = 1; k <= 4; ++k)
        if (want("thm" + std::to_string(k)))
            outcomes.push_back(gwm::fuzz_theorem(k, count, seed));
    for (int k = 1; k <= 2; ++k)
        if (want("lemma" + std::to_string(k)))
            outcomes.push_back(gwm::fuzz_lemma(k, count, seed));
    if (want("tq_monogamy"))
        outcomes.push_back(gwm::fuzz_tq(false, count, seed));
    if (want("tq_polygamy"))
        outcomes.push_back(gwm::fuzz_tq(true, count, seed));
    if (outcomes.empty())
        throw std::runtime_error(
            "fuzz: unknown target \"" + target +
            "\" (expected all, thm1..thm4, lemma1, lemma2, tq_monogamy, "
            "tq_polygamy)");

    std::ostringstream os;
    bool pass = true;
    for (const gwm::FuzzOutcome& out : outcomes) {
        os << gwm::summarize(out) << '\n';
        pass = pass && out.pass();
    }
    os << "fuzz: " << (pass ? "PASS" : "FAIL") << '\n';
    emit(os.str(), out_path);
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// params: admissible windows and optional bound evaluations
// ---------------------------------------------------------------------------

int cmd_params(const std::string& state_file, const std::string& part_file,
               double gamma, double delta, double alpha, double beta, double p,
               double omega, double ell, std::size_t z,
               const std::string& out_path) {
    const gwm::GWStateSpec spec = gwm::load_state_spec(state_file);
    const gwm::Partition part = gwm::load_partition(part_file, spec.n);
    const gwm::PartyWeights w = gwm::party_weights(spec, part);
    const std::size_t m = part.parties.size();
    if (m < 3)
        throw std::runtime_error(
            "params needs at least three parties (two-term bounds compare "
            "the first party against two others)");

    const double ca_ab = gwm::coa_pair_gw(w, 0, 1);
    const double ca_ac = gwm::coa_pair_gw(w, 0, 2);
    std::ostringstream os;
    os << "ca_pair(1,2) = " << fmt12(ca_ab) << '\n';
    os << "ca_pair(1,3) = " << fmt12(ca_ac) << '\n';
    os << "ca_one_vs_rest(1) = " << fmt12(gwm::coa_one_vs_rest_gw(w, 0))
       << '\n';
    const gwm::AdmissibleIntervals adm =
        gwm::admissible_params(ca_ab, ca_ac, gamma, delta);
    os << "gamma = " << fmt12(gamma) << ", delta = " << fmt12(delta) << '\n';
    os << "alpha_ell = " << fmt_interval(adm.alpha_ell) << '\n';
    os << "beta_ell = " << fmt_interval(adm.beta_ell) << '\n';
    os << "omega = " << fmt_interval(adm.omega) << '\n';

    int exit_code = 0;
    auto evaluate = [&](const char* label, const gwm::BoundReport& rep) {
        os << label << ": lhs=" << fmt12(rep.lhs) << " rhs=" << fmt12(rep.rhs)
           << " residual=" << fmt12(rep.residual) << " family=" << rep.family
           << '\n';
    };
    gwm::BoundParams prm;
    prm.gamma = gamma;
    prm.delta = {delta};
    prm.p = p;
    prm.omega = {omega};
    prm.ell = {ell};
    prm.z = z;
    try {
        if (!std::isnan(alpha)) {
            prm.alpha = alpha;
            evaluate("two-term alpha bound", gwm::thm1_bound(ca_ab, ca_ac, prm));
            if (m >= 4) {
                std::vector<double> pair_cas, tail_cas;
                for (std::size_t l = 1; l < m; ++l)
                    pair_cas.push_back(gwm::coa_pair_gw(w, 0, l));
                double tail = 0.0;
                tail_cas.resize(m - 1);
                for (std::size_t l = m; l-- > 1;) {
                    tail += w[l];
                    tail_cas[l - 1] = 2.0 * std::sqrt(w[0] * tail);
                }
                evaluate("chained alpha bound",
                         gwm::thm2_bound(pair_cas, tail_cas, prm));
            }
        }
        if (!std::isnan(beta)) {
            prm.beta = beta;
            evaluate("two-term beta bound", gwm::thm3_bound(ca_ab, ca_ac, prm));
        }
    } catch (const gwm::hypothesis_error& e) {
        os << "hypothesis failed: " << e.what() << '\n';
        for (const gwm::HypothesisCheck& c : e.checks())
            os << "  " << (c.holds ? "ok   " : "FAIL ") << c.label
               << " (margin " << fmt12(c.margin) << ")\n";
        exit_code = 1;
    }
    emit(os.str(), out_path);
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Assistance-measure numerics for generalized W-class states"};
    app.require_subcommand(1);
    const double nan = std::nan("");

    std::string state_file, part_file, out_path, grid_text;
    std::string fig_which, fuzz_target = "all";
    double q = 2.0;
    double gamma = 2.0, delta = 1.0, p = 1.0, omega = 1.0, ell = 1.0;
    double alpha = nan, beta = nan;
    double fig_gamma = nan, fig_omega = nan, fig_ell = nan, fig_delta = nan,
           fig_k = nan;
    std::size_t z = 1, random_count = 0, d = 2, n = 5, trials = 2000,
                count = 10000;
    std::uint64_t seed = 20240915;

    CLI::App* measure = app.add_subcommand(
        "measure", "Print assistance values for a state and partition");
    measure->add_option("--state", state_file, "state spec JSON")->required();
    measure->add_option("--partition", part_file, "partition JSON")->required();
    measure->add_option("--q", q, "Tsallis order (default 2)");
    measure->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* figure = app.add_subcommand(
        "figure", "Emit figure data (fig1..fig5) as CSV");
    figure->add_option("which", fig_which, "fig1|fig2|fig3|fig4|fig5")
        ->required();
    figure->add_option("--grid", grid_text,
                       "a:b:n axis override (fig3..fig5: only n is used)");
    figure->add_option("--gamma", fig_gamma, "base power override");
    figure->add_option("--omega", fig_omega, "omega override");
    figure->add_option("--ell", fig_ell, "l override");
    figure->add_option("--delta", fig_delta, "delta override (fig1)");
    figure->add_option("--k", fig_k, "interpolation k override (fig2)");
    figure->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* certify = app.add_subcommand(
        "certify", "Check closed forms against the sampling oracle");
    certify->add_option("--state", state_file, "state spec JSON");
    certify->add_option("--partition", part_file, "partition JSON");
    certify->add_option("--random", random_count,
                        "certify this many random specs instead of files");
    certify->add_option("--d", d, "qudit dimension for --random (default 2)");
    certify->add_option("--n", n, "site count for --random (default 5)");
    certify->add_option("--seed", seed, "base RNG seed");
    certify->add_option("--trials", trials,
                        "sampling trials per bracket (default 2000)");
    certify->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* fuzz = app.add_subcommand(
        "fuzz", "Randomized property sweeps over bounds and lemmas");
    fuzz->add_option("--target", fuzz_target,
                     "all|thm1..thm4|lemma1|lemma2|tq_monogamy|tq_polygamy");
    fuzz->add_option("--count", count, "samples per target (default 10000)");
    fuzz->add_option("--seed", seed, "base RNG seed");
    fuzz->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* params = app.add_subcommand(
        "params", "Admissible parameter windows, plus bound evaluation "
                  "when --alpha/--beta are given");
    params->add_option("--state", state_file, "state spec JSON")->required();
    params->add_option("--partition", part_file, "partition JSON")->required();
    params->add_option("--gamma", gamma, "base power (default 2)");
    params->add_option("--delta", delta, "delta (default 1)");
    params->add_option("--alpha", alpha, "evaluate the alpha bounds here");
    params->add_option("--beta", beta, "evaluate the beta bound here");
    params->add_option("--p", p, "interpolation p (default 1)");
    params->add_option("--omega", omega, "omega (default 1)");
    params->add_option("--ell", ell, "l (default 1)");
    params->add_option("--z", z, "chain split index (default 1)");
    params->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (measure->parsed())
            return cmd_measure(state_file, part_file, q, out_path);
        if (figure->parsed())
            return cmd_figure(fig_which, grid_text, fig_gamma, fig_omega,
                              fig_ell, fig_delta, fig_k, out_path);
        if (certify->parsed())
            return cmd_certify(state_file, part_file, random_count, d, n, seed,
                               trials, out_path);
        if (fuzz->parsed())
            return cmd_fuzz(fuzz_target, count, seed, out_path);
        if (params->parsed())
            return cmd_params(state_file, part_file, gamma, delta, alpha, beta,
                              p, omega, ell, z, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
