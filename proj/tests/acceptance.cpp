// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "wavuniq/admissibility.hpp"
#include "wavuniq/cli.hpp"
#include "wavuniq/dualframe.hpp"
#include "wavuniq/error.hpp"
#include "wavuniq/moments.hpp"
#include "wavuniq/spectral.hpp"
#include "wavuniq/transform.hpp"
#include "wavuniq/wavelets.hpp"

using namespace wavuniq;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double l2(const SampledSignal& f) { return std::sqrt(signal_energy(f)); }

Outcome fourier_pairs() {
    const auto big = UniformGrid::covering(-100.0, 100.0, std::size_t{1} << 15);
    const WaveletSpec poisson = make_wavelet(WaveletKind::poisson);
    const SpectralSignal ph = forward_ft(SampledSignal::sample(big, [&](double x) { return poisson(x); }, true));
    double perr = 0.0;
    for (std::size_t i = 0; i < ph.size(); ++i) {
        const double w = ph.omega(i);
        if (std::abs(w) <= 4.0) perr = std::max(perr, std::abs(ph[i] - std::exp(-kTwoPi * std::abs(w))));
    }
    const auto grid = UniformGrid::covering(-16.0, 16.0, 1024);
    const SpectralSignal gh =
        forward_ft(SampledSignal::sample(grid, [](double x) { return std::exp(-kPi * x * x); }, true));
    double gerr = 0.0;
    for (std::size_t i = 0; i < gh.size(); ++i) {
        const double w = gh.omega(i);
        gerr = std::max(gerr, std::abs(gh[i] - std::exp(-kPi * w * w)));
    }
    return {perr <= 1e-2 && gerr <= 1e-10,
            "poisson sup err " + fmt("%.3e", perr) + " (<= 1e-2), gaussian self-dual err " + fmt("%.3e", gerr) +
                " (<= 1e-10)"};
}

Outcome annihilation_witness() {
    // The sampled wavelet is zero-padded outside its window, so the window must
    // hold the test function down to roundoff: on [-32, 32) the edge samples
    // are still 3e-9 and their truncation leaks into the positive half-line.
    const auto grid = UniformGrid::covering(-64.0, 64.0, 4096);
    const SampledSignal f = make_test_function(1.0, 2.0, false, grid);
    WaveletParams params;
    params.samples = conj(make_test_function(1.0, 2.0, false, grid));
    const WaveletSpec psi = make_wavelet(WaveletKind::sampled, params);
    const double psi_norm = l2(*params.samples);
    const Scalogram w = cwt(f, psi, ScaleGrid::geometric(ScaleGrid::Exponent{2.0, 1, 8}, -32, 32));
    const double bound = 1e-10 * l2(f) * psi_norm;
    const auto cert = uniqueness_certificate(f, psi);
    int positive_energies = 0;
    double max_product = 0.0;
    for (const auto& c : cert) {
        positive_energies += (c.signal_energy > 1e-6) + (c.wavelet_energy > 1e-6);
        max_product = std::max(max_product, c.product);
    }
    const bool pass = w.rows() == 65 && w.max_abs() <= bound && positive_energies == 2 && max_product <= 1e-20;
    return {pass, "max|cwt| " + fmt("%.3e", w.max_abs()) + " vs bound " + fmt("%.3e", bound) +
                      ", energies > 0: " + std::to_string(positive_energies) + " of 4, max side product " +
                      fmt("%.3e", max_product)};
}

Outcome injectivity() {
    const WaveletSpec psi = make_wavelet(WaveletKind::gaussian);
    const double tau = default_threshold(psi);
    const bool tauberian = tauberian_check(psi, Side::positive, tau).nontrivial &&
                           tauberian_check(psi, Side::negative, tau).nontrivial;
    const bool divergent = calderon_constant(psi, Side::positive).divergent() &&
                           calderon_constant(psi, Side::negative).divergent();
    const auto grid = UniformGrid::covering(-32.0, 32.0, 2048);
    std::mt19937_64 rng(20261015);
    std::uniform_real_distribution<double> lo_dist(0.2, 3.0);
    std::uniform_real_distribution<double> width_dist(0.3, 2.0);
    std::normal_distribution<double> coef(0.0, 1.0);
    const ScaleGrid scales = ScaleGrid::geometric(2.0, -4, 4);
    double worst = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 32; ++trial) {
        SampledSignal f = SampledSignal::sample(grid, [](double) { return 0.0; });
        for (int term = 0; term < 3; ++term) {
            const double lo = lo_dist(rng);
            const bool symmetric = term % 2 == 0;
            const SampledSignal piece = make_test_function(lo, lo + width_dist(rng), symmetric, grid);
            f = f + Complex(coef(rng), coef(rng)) * piece;
        }
        f = Complex(1.0 / l2(f)) * f;
        worst = std::min(worst, cwt(f, psi, scales).max_abs());
    }
    return {tauberian && divergent && worst >= 1e-6,
            std::string("tauberian both sides ") + (tauberian ? "yes" : "no") + ", calderon " +
                (divergent ? "divergent" : "finite") + ", min over signals of max|cwt| " + fmt("%.3e", worst)};
}

Outcome calderon() {
    const auto mex = calderon_constant(make_wavelet(WaveletKind::mexican_hat), Side::positive);
    const auto pd = calderon_constant(make_wavelet(WaveletKind::poisson_derivative), Side::positive);
    const auto g = make_wavelet(WaveletKind::gaussian);
    const bool gdiv = calderon_constant(g, Side::positive).divergent() && calderon_constant(g, Side::negative).divergent();
    const double emex = mex.value ? std::abs(*mex.value - kPi) : INFINITY;
    const double epd = pd.value ? std::abs(*pd.value - 0.25) : INFINITY;
    return {emex <= 1e-4 && epd <= 1e-6 && gdiv,
            "mexican |C - pi| " + fmt("%.3e", emex) + ", poisson_derivative |C - 1/4| " + fmt("%.3e", epd) +
                ", gaussian " + (gdiv ? "divergent" : "finite")};
}

DualWavelet mexican_dual(const WaveletSpec& psi) {
    const CoverResult cover = find_cover(psi, 0.1 * spectrum_sup(psi), 2.0, true);
    return build_dual(psi, make_bump(cover), cover.common_base());
}

Outcome partition() {
    const WaveletSpec mex = make_wavelet(WaveletKind::mexican_hat);
    const PartitionReport a = partition_check(mex, mexican_dual(mex), 1e-3, 1e3, 512);
    WaveletParams params;
    params.samples = SampledSignal::sample(UniformGrid::covering(-16.0, 16.0, 1024), [&](double x) { return mex(x); }, true);
    const WaveletSpec sampled = make_wavelet(WaveletKind::sampled, params);
    const PartitionReport b = partition_check(sampled, mexican_dual(sampled), 1e-3, 1e3, 512);
    return {a.max_deviation <= 1e-10 && b.max_deviation <= 1e-6,
            "analytic max dev " + fmt("%.3e", a.max_deviation) + " (<= 1e-10), sampled " +
                fmt("%.3e", b.max_deviation) + " (<= 1e-6)"};
}

Outcome reproducing() {
    const auto grid = UniformGrid::covering(-32.0, 32.0, 2048);
    const SampledSignal g = make_test_function(1.0, 2.0, true, grid);
    const WaveletSpec mex = make_wavelet(WaveletKind::mexican_hat);
    const DualWavelet mu = mexican_dual(mex);
    const JRange range = required_j_range(g, mu);
    const SampledSignal spec = reconstruct(g, mex, mu, range, ReconstructMode::spectral);
    const SampledSignal temp = reconstruct(g, mex, mu, range, ReconstructMode::temporal);
    const double n = l2(g);
    const double es = l2(spec - g) / n;
    const double et = l2(temp - g) / n;
    const double em = l2(spec - temp) / n;
    return {es <= 1e-6 && et <= 1e-3 && em <= 1e-3,
            "spectral " + fmt("%.3e", es) + " (<= 1e-6), temporal " + fmt("%.3e", et) + " (<= 1e-3), modes " +
                fmt("%.3e", em) + " (<= 1e-3)"};
}

Outcome vanishing_moments() {
    const WaveletSpec mex = make_wavelet(WaveletKind::mexican_hat);
    double worst = 0.0;
    for (double s : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        for (double t : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
            worst = std::max(worst, std::abs(cwt_single([](double) { return Complex(1.0); }, 0, mex, s, t)));
        }
    }
    const double m0 = std::abs(moment(mex, 0).value);
    const double m1 = std::abs(moment(mex, 1).value);
    const double m2 = std::abs(moment(mex, 2).value - Complex(-2.0 * std::sqrt(kTwoPi)));
    const double h1 = std::abs(moment(make_wavelet(WaveletKind::haar), 1).value - Complex(-0.25));
    return {worst <= 1e-8 && m0 <= 1e-10 && m1 <= 1e-10 && m2 <= 1e-6 && h1 <= 1e-12,
            "max|<1, psi_st>| " + fmt("%.3e", worst) + ", |M0| " + fmt("%.3e", m0) + ", |M1| " + fmt("%.3e", m1) +
                ", |M2 + 2 sqrt(2pi)| " + fmt("%.3e", m2) + ", haar |M1 + 1/4| " + fmt("%.3e", h1)};
}

Outcome recovery() {
    const PolynomialSignal quad({0.5, -1.0, 2.0});
    std::vector<PairingSample> zeros;
    for (double t : {-2.0, -1.0, 0.0, 1.0, 2.0}) zeros.push_back({t, Complex(0.0)});
    const RecoveryResult z = moment_recovery(zeros, quad, 1.0);
    double zmax = 0.0;
    for (const auto& v : z.moments.values) zmax = std::max(zmax, std::abs(v));

    const WaveletSpec haar = make_wavelet(WaveletKind::haar);
    const PolynomialSignal line({1.0, 3.0});
    std::vector<PairingSample> samples;
    for (double t : {-1.5, -0.5, 0.25, 1.0, 2.0}) samples.push_back({t, polynomial_pairing(line, haar, 1.0, t)});
    const RecoveryResult h = moment_recovery(samples, line, 1.0);
    const double e0 = std::abs(h.moments[0]);
    const double e1 = std::abs(h.moments[1] - Complex(-0.25));
    return {z.moments.values.size() == 3 && zmax == 0.0 && e0 <= 1e-8 && e1 <= 1e-8,
            "zero pairing max|M| " + fmt("%.3e", zmax) + ", haar |M0| " + fmt("%.3e", e0) + ", |M1 + 1/4| " +
                fmt("%.3e", e1)};
}

Outcome plancherel() {
    const WaveletSpec mex = make_wavelet(WaveletKind::mexican_hat);
    const WaveletSpec normalized = as_wavelet(dilate_translate(mex, 1.0, 0.0), 1.0 / std::sqrt(kPi));
    const auto grid = UniformGrid::covering(-32.0, 32.0, 2048);
    const SampledSignal f = SampledSignal::sample(grid, [](double x) { return std::exp(-kPi * x * x); }, true);
    const Scalogram w = cwt(f, normalized, ScaleGrid::geometric(ScaleGrid::Exponent{2.0, 1, 8}, -32, 32));
    const double ratio = plancherel_energy(w) / signal_energy(f);
    return {ratio >= 0.99 && ratio <= 1.01, "ratio " + fmt("%.6f", ratio) + " (target [0.99, 1.01])"};
}

Outcome interchangeability() {
    const WaveletSpec psi = make_wavelet(WaveletKind::gaussian);
    auto f = [](double x) { return Complex(std::exp(-0.5 * (x - 0.4) * (x - 0.4)) * (1.0 + 0.5 * std::sin(3.0 * x))); };
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> log_s(std::log(0.25), std::log(4.0));
    std::uniform_real_distribution<double> shift(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double s = std::exp(log_s(rng));
        const double t = shift(rng);
        const Complex lhs = cwt_single(f, 0, psi, s, t);
        // f_{1/s, -t/s}(x) = s^{1/2} f(s x + t)
        const Complex rhs = cwt_single([&](double x) { return std::sqrt(s) * f(s * x + t); }, 0, psi, 1.0, 0.0);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return {worst <= 1e-8, "max |<f, psi_st> - <f_(1/s,-t/s), psi>| " + fmt("%.3e", worst)};
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "wavuniq_cli");
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

Outcome cli_contract() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("wavuniq_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto grid = UniformGrid::covering(-16.0, 16.0, 512);
    const std::string signal = (dir / "signal.csv").string();
    cli::write_signal_csv(make_test_function(1.0, 2.0, true, grid), signal);
    const std::string one_sided = (dir / "one_sided.csv").string();
    cli::write_signal_csv(make_test_function(1.0, 2.0, false, grid), one_sided);

    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> commands = {
        {{"cwt", "--input", signal, "--wavelet", "mexican_hat", "--scales", "geom:b=2^1/4,jmin=-8,jmax=8",
          "--output", (dir / "w.bin").string()},
         {"w.bin"}},
        {{"cwt", "--input", signal, "--format", "csv", "--scales", "geom:b=2,jmin=-2,jmax=2", "--output",
          (dir / "w.csv").string()},
         {"w.csv"}},
        {{"admissibility", "--wavelet", "gaussian"}, {}},
        {{"dual", "--wavelet", "mexican", "--output", (dir / "mu.csv").string()}, {"mu.csv"}},
        {{"reconstruct", "--input", signal, "--output", (dir / "rec.csv").string()}, {"rec.csv"}},
        {{"moments", "--wavelet", "mexican", "--max-order", "2"}, {}},
        {{"uniqueness", "--input", signal, "--wavelet", "poisson_derivative"}, {}},
        {{"wavelets", "list"}, {}},
    };
    bool deterministic = true;
    std::string failed;
    for (const auto& [args, files] : commands) {
        const CliRun a = run(args);
        std::vector<std::string> first;
        for (const auto& f : files) first.push_back(slurp(dir / f));
        const CliRun b = run(args);
        bool same = a.code == 0 && b.code == 0 && a.out == b.out;
        for (std::size_t i = 0; i < files.size(); ++i) same = same && !first[i].empty() && first[i] == slurp(dir / files[i]);
        if (!same) {
            deterministic = false;
            failed += " " + args[0];
        }
    }

    bool round_trip = false;
    try {
        const Scalogram w = cli::read_scalogram((dir / "w.bin").string(), cli::ScalogramFormat::binary);
        const std::string rewritten = (dir / "w2.bin").string();
        cli::write_scalogram(w, rewritten, cli::ScalogramFormat::binary);
        round_trip = slurp(dir / "w.bin") == slurp(rewritten) && w.scales.is_geometric();
    } catch (const std::exception&) {
        round_trip = false;
    }

    {
        std::ofstream bad(dir / "jitter.csv");
        bad << "x,value\n0,1\n0.1,2\n0.2003,3\n0.3,4\n";
    }
    const int nonuniform = run({"cwt", "--input", (dir / "jitter.csv").string(), "--output", (dir / "x.bin").string()}).code;
    const CliRun dual = run({"dual", "--wavelet", one_sided, "--b-min", "4"});
    const bool codes = nonuniform == 2 && dual.code == 3 && dual.err.find("TauberianFail") != std::string::npos;
    fs::remove_all(dir);
    return {deterministic && round_trip && codes,
            std::string("deterministic ") + (deterministic ? "yes" : "no (" + failed + " )") + ", binary round trip " +
                (round_trip ? "bit-exact" : "differs") + ", nonuniform CSV exit " + std::to_string(nonuniform) +
                ", one-sided dual exit " + std::to_string(dual.code)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"Fourier pairs", fourier_pairs},
        {"disjoint-spectrum annihilation witness", annihilation_witness},
        {"injectivity with a Tauberian, non-admissible wavelet", injectivity},
        {"Calderon constants", calderon},
        {"partition of unity", partition},
        {"reproducing formula", reproducing},
        {"vanishing moments", vanishing_moments},
        {"moment recovery", recovery},
        {"Plancherel ratio", plancherel},
        {"interchangeability identity", interchangeability},
        {"CLI contract", cli_contract},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const Error& e) {
            o = {false, std::string("threw ") + e.name() + ": " + e.what()};
        } catch (const std::exception& e) {
            o = {false, std::string("threw ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
