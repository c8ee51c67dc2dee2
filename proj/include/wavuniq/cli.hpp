#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wavuniq/spectral.hpp"
#include "wavuniq/transform.hpp"
#include "wavuniq/wavelets.hpp"

namespace wavuniq::cli {

enum class ScalogramFormat { binary, csv };

struct CommandConfig {
    std::string subcommand;
    std::string input;    // signal CSV
    std::string output;   // bulk output (scalogram, μ̂ samples, reconstruction)
    std::string report;   // JSON report; stdout when empty
    std::string wavelet = "mexican_hat";  // kind name or path to a sample CSV
    int order = 1;                        // gaussian_derivative order
    std::string scales = "geom:b=2^1/4,jmin=-16,jmax=16";
    std::optional<double> tau;            // absolute threshold
    double tau_rel = 0.1;                 // dual: threshold relative to sup|ψ̂|
    double b_min = 2.0;
    bool one_sided = false;
    ScalogramFormat format = ScalogramFormat::binary;
    int max_order = 2;
    std::string mode = "spectral";
    std::size_t probes = 512;
    double omega_lo = 1e-3;
    double omega_hi = 1e3;
    unsigned threads = 0;
};

/// Header `x,value` (real) or `x,re,im` (complex); spacing must be uniform to
/// 1e-9 of dx.
SampledSignal read_signal_csv(const std::string& path);
void write_signal_csv(const SampledSignal& f, const std::string& path);

/// `geom:b=<float | radix^p/q>,jmin=<int>,jmax=<int>` or `list:s1,s2,...`.
ScaleGrid parse_scale_grid(const std::string& text);

/// Kind name, or a path to a sample CSV for a sampled wavelet.
WaveletSpec resolve_wavelet(const std::string& name, int order);

/// Binary layout: "CWTS", u32 version 1, u64 n_scales, u64 n_translations,
/// f64 x0, dx, base_b, f64 scales[n_scales], then (re, im) pairs row-major.
/// Little-endian throughout.
void write_scalogram(const Scalogram& w, const std::string& path, ScalogramFormat format);
Scalogram read_scalogram(const std::string& path, ScalogramFormat format);

inline constexpr std::size_t kScalogramHeaderBytes = 48;

/// Runs one subcommand. Returns the process exit code: 0 ok, 2 validation or
/// parse, 3 TauberianFail / DegenerateDenominator / BandCoverage, 4 I/O.
int run_command(const CommandConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and runs the command.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wavuniq::cli
