#include "wavuniq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include "wavuniq/admissibility.hpp"
#include "wavuniq/dualframe.hpp"
#include "wavuniq/error.hpp"
#include "wavuniq/moments.hpp"

namespace wavuniq::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& text, std::string_view what) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || text.empty()) {
        throw ValidationError(std::string(what) + ": cannot parse number '" + text + "'");
    }
    return v;
}

long long parse_int(const std::string& text, std::string_view what) {
    long long v = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || text.empty()) {
        throw ValidationError(std::string(what) + ": cannot parse integer '" + text + "'");
    }
    return v;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void scalogram_csv(const Scalogram& w, std::ostream& os) {
    os << "scales";
    for (double s : w.scales.scales()) os << ',' << format_double(s);
    os << "\ngrid," << format_double(w.translations.x0) << ',' << format_double(w.translations.dx) << ','
       << w.translations.n << ',' << format_double(w.scales.is_geometric() ? w.scales.base() : 0.0) << '\n';
    for (std::size_t i = 0; i < w.rows(); ++i) {
        for (std::size_t k = 0; k < w.cols(); ++k) {
            if (k) os << ',';
            os << format_double(w.at(i, k).real()) << ',' << format_double(w.at(i, k).imag());
        }
        os << '\n';
    }
}

std::ofstream open_out(const std::string& path, bool binary) {
    std::ofstream os(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    return os;
}

std::ifstream open_in(const std::string& path, bool binary) {
    std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
    if (!is) throw IoError("cannot open '" + path + "' for reading");
    return is;
}

void finish(std::ostream& os, const std::string& path) {
    os.flush();
    if (!os) throw IoError("write to '" + path + "' failed");
}

// Little-endian scalar I/O.
void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_f64(std::string& buf, double v) { put_u64(buf, std::bit_cast<std::uint64_t>(v)); }

class Reader {
public:
    explicit Reader(std::string data) : data_(std::move(data)) {}
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += 8;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += 4;
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    std::string bytes(std::size_t n) {
        need(n);
        std::string s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    std::size_t remaining() const { return data_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (data_.size() - pos_ < n) throw ValidationError("scalogram file truncated");
    }
    std::string data_;
    std::size_t pos_ = 0;
};

// Rebuilds a geometric grid whose scales match bit for bit, trying the
// 2^(p/q) exponent form first. Falls back to an explicit grid.
ScaleGrid restore_scales(std::vector<double> scales, double base) {
    if (base > 1.0 && !scales.empty()) {
        const double jf = std::log(scales.front()) / std::log(base);
        const long long j0 = std::llround(jf);
        const auto j1 = j0 + static_cast<long long>(scales.size()) - 1;
        if (std::abs(jf - static_cast<double>(j0)) < 1e-6 && j1 <= INT32_MAX && j0 >= INT32_MIN) {
            auto matches = [&](const ScaleGrid& g) {
                if (g.size() != scales.size()) return false;
                for (std::size_t i = 0; i < scales.size(); ++i) {
                    if (std::bit_cast<std::uint64_t>(g.scale(i)) != std::bit_cast<std::uint64_t>(scales[i])) return false;
                }
                return true;
            };
            const double p_over_q = std::log2(base);
            for (long long q = 1; q <= 64; ++q) {
                const long long p = std::llround(p_over_q * static_cast<double>(q));
                if (p <= 0 || std::abs(p_over_q * static_cast<double>(q) - static_cast<double>(p)) > 1e-9) continue;
                if (std::gcd(p, q) != 1) continue;
                auto g = ScaleGrid::geometric(ScaleGrid::Exponent{2.0, p, q}, static_cast<int>(j0), static_cast<int>(j1));
                if (g.base() == base && matches(g)) return g;
                break;
            }
            auto g = ScaleGrid::geometric(base, static_cast<int>(j0), static_cast<int>(j1));
            if (matches(g)) return g;
        }
    }
    return ScaleGrid::explicit_scales(std::move(scales), base);
}

ScaleGrid::Exponent parse_exponent_form(const std::string& text) {
    // radix^p/q or radix^p
    const auto caret = text.find('^');
    const double radix = parse_double(text.substr(0, caret), "scale base");
    const std::string rest = text.substr(caret + 1);
    const auto slash = rest.find('/');
    const long long p = parse_int(rest.substr(0, slash), "scale exponent");
    const long long q = slash == std::string::npos ? 1 : parse_int(rest.substr(slash + 1), "scale exponent");
    if (q <= 0) throw ValidationError("scale exponent: denominator must be positive");
    return {radix, p, q};
}

Json number_or(double v, const char* otherwise) {
    return std::isfinite(v) ? Json(v) : Json(otherwise);
}

void emit_report(const Json& j, const CommandConfig& c, std::ostream& out) {
    const std::string text = j.dump(2) + "\n";
    if (c.report.empty()) {
        out << text;
    } else {
        auto os = open_out(c.report, false);
        os << text;
        finish(os, c.report);
    }
}

SampledSignal require_signal(const CommandConfig& c) {
    if (c.input.empty()) throw ValidationError(c.subcommand + ": --input is required");
    return read_signal_csv(c.input);
}

DualWavelet dual_from_config(const WaveletSpec& psi, const CommandConfig& c, CoverResult* cover_out = nullptr) {
    const double tau = c.tau ? *c.tau : c.tau_rel * spectrum_sup(psi);
    const CoverResult cover = find_cover(psi, tau, c.b_min, !c.one_sided);
    if (cover_out) *cover_out = cover;
    return build_dual(psi, make_bump(cover), cover.common_base());
}

int cmd_cwt(const CommandConfig& c, std::ostream& out) {
    const SampledSignal f = require_signal(c);
    const WaveletSpec psi = resolve_wavelet(c.wavelet, c.order);
    const Scalogram w = cwt(f, psi, parse_scale_grid(c.scales), CwtOptions{c.threads});
    if (c.output.empty()) {
        if (c.format == ScalogramFormat::binary) throw ValidationError("cwt: binary output requires --output");
        scalogram_csv(w, out);
        return 0;
    }
    write_scalogram(w, c.output, c.format);
    return 0;
}

int cmd_admissibility(const CommandConfig& c, std::ostream& out) {
    const WaveletSpec psi = resolve_wavelet(c.wavelet, c.order);
    const AdmissibilityReport r = admissibility_report(psi, c.tau);
    Json j;
    j["wavelet"] = psi.name();
    j["threshold"] = r.threshold;
    Json sides = Json::array();
    for (const auto& s : r.sides) {
        Json e;
        e["side"] = std::string(to_string(s.side));
        e["tauberian"] = s.tauberian;
        e["tauberian_measure"] = s.tauberian_measure;
        e["calderon"] = s.calderon.value ? Json(*s.calderon.value) : Json("divergent");
        e["directional_energy"] = number_or(s.directional_energy, "divergent");
        sides.push_back(std::move(e));
    }
    j["sides"] = std::move(sides);
    emit_report(j, c, out);
    return 0;
}

int cmd_dual(const CommandConfig& c, std::ostream& out) {
    const WaveletSpec psi = resolve_wavelet(c.wavelet, c.order);
    CoverResult cover;
    const DualWavelet mu = dual_from_config(psi, c, &cover);
    const PartitionReport p = partition_check(psi, mu, c.omega_lo, c.omega_hi, c.probes);
    if (!c.output.empty()) {
        auto os = open_out(c.output, false);
        os << "omega,re,im\n";
        std::vector<double> omegas;
        for (Side side : {Side::negative, Side::positive}) {
            if (!cover.get(side)) continue;
            for (std::size_t i = 0; i < c.probes; ++i) {
                const double u = c.probes == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(c.probes - 1);
                omegas.push_back(sign_of(side) * c.omega_lo * std::pow(c.omega_hi / c.omega_lo, u));
            }
        }
        std::sort(omegas.begin(), omegas.end());
        for (double w : omegas) {
            const Complex m = mu.spectrum(w);
            os << format_double(w) << ',' << format_double(m.real()) << ',' << format_double(m.imag()) << '\n';
        }
        finish(os, c.output);
    }
    Json j;
    j["base_b"] = mu.base();
    j["max_deviation"] = p.max_deviation;
    j["probes"] = p.probes;
    emit_report(j, c, out);
    return 0;
}

int cmd_reconstruct(const CommandConfig& c, std::ostream& out) {
    const SampledSignal g = require_signal(c);
    const WaveletSpec psi = resolve_wavelet(c.wavelet, c.order);
    ReconstructMode mode;
    if (c.mode == "spectral") {
        mode = ReconstructMode::spectral;
    } else if (c.mode == "temporal") {
        mode = ReconstructMode::temporal;
    } else {
        throw ValidationError("reconstruct: unknown mode '" + c.mode + "'");
    }
    const DualWavelet mu = dual_from_config(psi, c);
    const JRange range = required_j_range(g, mu);
    const SampledSignal rec = reconstruct(g, psi, mu, range, mode);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        num += std::norm(rec[k] - g[k]);
        den += std::norm(g[k]);
    }
    if (!c.output.empty()) {
        write_signal_csv(g.is_real() ? SampledSignal::from_real(rec.grid(), rec.real_part()) : rec, c.output);
    }
    Json j;
    j["rel_l2_error"] = den > 0.0 ? std::sqrt(num / den) : 0.0;
    j["j_min"] = range.min;
    j["j_max"] = range.max;
    j["mode"] = c.mode;
    emit_report(j, c, out);
    return 0;
}

int cmd_moments(const CommandConfig& c, std::ostream& out) {
    const WaveletSpec psi = resolve_wavelet(c.wavelet, c.order);
    const MomentVector m = moments(psi, c.max_order);
    Json arr = Json::array();
    for (std::size_t l = 0; l < m.values.size(); ++l) {
        Json e;
        e["order"] = l;
        e["value"] = m.values[l].real();
        e["imag"] = m.values[l].imag();
        e["error_bound"] = m.error_bounds[l];
        arr.push_back(std::move(e));
    }
    emit_report(arr, c, out);
    return 0;
}

int cmd_uniqueness(const CommandConfig& c, std::ostream& out) {
    const SampledSignal f = require_signal(c);
    const WaveletSpec psi = resolve_wavelet(c.wavelet, c.order);
    Json arr = Json::array();
    for (const auto& s : uniqueness_certificate(f, psi)) {
        Json e;
        e["side"] = std::string(to_string(s.side));
        e["signal_energy"] = s.signal_energy;
        e["wavelet_energy"] = s.wavelet_energy;
        e["product"] = s.product;
        arr.push_back(std::move(e));
    }
    emit_report(arr, c, out);
    return 0;
}

int cmd_wavelets(std::ostream& out) {
    for (auto kind : {WaveletKind::gaussian, WaveletKind::gaussian_derivative, WaveletKind::mexican_hat,
                      WaveletKind::poisson, WaveletKind::poisson_derivative, WaveletKind::haar}) {
        out << to_string(kind) << '\n';
    }
    out << "<path.csv>\n";
    return 0;
}

}  // namespace

SampledSignal read_signal_csv(const std::string& path) {
    auto is = open_in(path, false);
    std::string line;
    if (!std::getline(is, line)) throw ValidationError("signal CSV: empty file");
    const auto header = split(line, ',');
    bool complex_values = false;
    if (header == std::vector<std::string>{"x", "value"}) {
        complex_values = false;
    } else if (header == std::vector<std::string>{"x", "re", "im"}) {
        complex_values = true;
    } else {
        throw ValidationError("signal CSV: expected header 'x,value' or 'x,re,im'");
    }
    const std::size_t width = complex_values ? 3 : 2;
    std::vector<double> xs;
    std::vector<Complex> values;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != width) {
            throw ValidationError("signal CSV: line " + std::to_string(line_no) + " has " +
                                  std::to_string(cells.size()) + " fields");
        }
        xs.push_back(parse_double(cells[0], "signal CSV"));
        const double re = parse_double(cells[1], "signal CSV");
        const double im = complex_values ? parse_double(cells[2], "signal CSV") : 0.0;
        values.emplace_back(re, im);
    }
    if (xs.size() < 2) throw ValidationError("signal CSV: need at least two rows");
    const std::size_t n = xs.size();
    const double dx = (xs.back() - xs.front()) / static_cast<double>(n - 1);
    if (!(dx > 0.0)) throw ValidationError("signal CSV: x must increase");
    for (std::size_t k = 0; k < n; ++k) {
        const double expected = xs.front() + static_cast<double>(k) * dx;
        if (std::abs(xs[k] - expected) > 1e-9 * dx) {
            throw ValidationError("signal CSV: nonuniform spacing at row " + std::to_string(k + 2));
        }
    }
    return SampledSignal(UniformGrid::make(xs.front(), dx, n), std::move(values), !complex_values);
}

void write_signal_csv(const SampledSignal& f, const std::string& path) {
    std::ostringstream os;
    const bool real = f.is_real();
    os << (real ? "x,value\n" : "x,re,im\n");
    for (std::size_t k = 0; k < f.size(); ++k) {
        os << format_double(f.grid().x(k)) << ',' << format_double(f[k].real());
        if (!real) os << ',' << format_double(f[k].imag());
        os << '\n';
    }
    auto file = open_out(path, false);
    file << os.str();
    finish(file, path);
}

ScaleGrid parse_scale_grid(const std::string& text) {
    if (text.rfind("list:", 0) == 0) {
        std::vector<double> scales;
        for (const auto& cell : split(std::string_view(text).substr(5), ',')) {
            scales.push_back(parse_double(cell, "scale list"));
        }
        return ScaleGrid::explicit_scales(std::move(scales));
    }
    if (text.rfind("geom:", 0) != 0) throw ValidationError("scale grid: expected 'geom:' or 'list:' prefix");
    std::optional<std::string> base;
    std::optional<long long> jmin;
    std::optional<long long> jmax;
    for (const auto& field : split(std::string_view(text).substr(5), ',')) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw ValidationError("scale grid: malformed field '" + field + "'");
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (key == "b") {
            base = value;
        } else if (key == "jmin") {
            jmin = parse_int(value, "scale grid jmin");
        } else if (key == "jmax") {
            jmax = parse_int(value, "scale grid jmax");
        } else {
            throw ValidationError("scale grid: unknown key '" + key + "'");
        }
    }
    if (!base || !jmin || !jmax) throw ValidationError("scale grid: b, jmin and jmax are required");
    if (*jmin < INT32_MIN || *jmax > INT32_MAX) throw ValidationError("scale grid: j out of range");
    if (base->find('^') != std::string::npos) {
        return ScaleGrid::geometric(parse_exponent_form(*base), static_cast<int>(*jmin), static_cast<int>(*jmax));
    }
    return ScaleGrid::geometric(parse_double(*base, "scale grid b"), static_cast<int>(*jmin), static_cast<int>(*jmax));
}

WaveletSpec resolve_wavelet(const std::string& name, int order) {
    if (const auto kind = parse_wavelet_kind(name)) {
        if (*kind == WaveletKind::sampled || *kind == WaveletKind::custom) {
            throw ValidationError("wavelet '" + name + "' needs samples; pass a CSV path instead");
        }
        WaveletParams params;
        params.order = order;
        return make_wavelet(*kind, params);
    }
    if (std::filesystem::exists(name)) {
        WaveletParams params;
        params.samples = read_signal_csv(name);
        return make_wavelet(WaveletKind::sampled, params);
    }
    throw ValidationError("unknown wavelet '" + name + "'");
}

void write_scalogram(const Scalogram& w, const std::string& path, ScalogramFormat format) {
    const auto scales = w.scales.scales();
    if (format == ScalogramFormat::binary) {
        std::string buf;
        buf.reserve(kScalogramHeaderBytes + 8 * scales.size() + 16 * w.coeffs.size());
        buf.append("CWTS", 4);
        put_u32(buf, 1);
        put_u64(buf, scales.size());
        put_u64(buf, w.translations.n);
        put_f64(buf, w.translations.x0);
        put_f64(buf, w.translations.dx);
        put_f64(buf, w.scales.is_geometric() ? w.scales.base() : 0.0);
        for (double s : scales) put_f64(buf, s);
        for (const Complex& z : w.coeffs) {
            put_f64(buf, z.real());
            put_f64(buf, z.imag());
        }
        auto os = open_out(path, true);
        os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        finish(os, path);
        return;
    }
    std::ostringstream os;
    scalogram_csv(w, os);
    auto file = open_out(path, false);
    file << os.str();
    finish(file, path);
}

Scalogram read_scalogram(const std::string& path, ScalogramFormat format) {
    auto is = open_in(path, format == ScalogramFormat::binary);
    if (format == ScalogramFormat::binary) {
        std::string data((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
        Reader r(std::move(data));
        if (r.bytes(4) != "CWTS") throw ValidationError("scalogram file: bad magic");
        if (r.u32() != 1) throw ValidationError("scalogram file: unsupported version");
        const std::uint64_t ns = r.u64();
        const std::uint64_t nt = r.u64();
        const double x0 = r.f64();
        const double dx = r.f64();
        const double base = r.f64();
        if (ns > r.remaining() / 8 || (ns > 0 && nt > (r.remaining() - 8 * ns) / (16 * ns))) {
            throw ValidationError("scalogram file: size does not match header");
        }
        std::vector<double> scales(ns);
        for (auto& s : scales) s = r.f64();
        std::vector<Complex> coeffs(ns * nt);
        for (auto& z : coeffs) {
            const double re = r.f64();
            const double im = r.f64();
            z = Complex(re, im);
        }
        if (r.remaining() != 0) throw ValidationError("scalogram file: trailing bytes");
        Scalogram w{restore_scales(std::move(scales), base), UniformGrid{x0, dx, static_cast<std::size_t>(nt)},
                    std::move(coeffs), std::vector<bool>(ns, false)};
        return w;
    }
    std::string line;
    if (!std::getline(is, line)) throw ValidationError("scalogram CSV: empty file");
    auto head = split(line, ',');
    if (head.empty() || head[0] != "scales") throw ValidationError("scalogram CSV: missing scales row");
    std::vector<double> scales;
    for (std::size_t i = 1; i < head.size(); ++i) scales.push_back(parse_double(head[i], "scalogram CSV"));
    if (!std::getline(is, line)) throw ValidationError("scalogram CSV: missing grid row");
    const auto grid = split(line, ',');
    if (grid.size() != 5 || grid[0] != "grid") throw ValidationError("scalogram CSV: malformed grid row");
    const double x0 = parse_double(grid[1], "scalogram CSV");
    const double dx = parse_double(grid[2], "scalogram CSV");
    const auto nt = static_cast<std::size_t>(parse_int(grid[3], "scalogram CSV"));
    const double base = parse_double(grid[4], "scalogram CSV");
    std::vector<Complex> coeffs;
    coeffs.reserve(scales.size() * nt);
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!std::getline(is, line)) throw ValidationError("scalogram CSV: missing row");
        const auto cells = split(line, ',');
        if (cells.size() != 2 * nt) throw ValidationError("scalogram CSV: row width mismatch");
        for (std::size_t k = 0; k < nt; ++k) {
            coeffs.emplace_back(parse_double(cells[2 * k], "scalogram CSV"),
                                parse_double(cells[2 * k + 1], "scalogram CSV"));
        }
    }
    const std::size_t ns = scales.size();
    return Scalogram{restore_scales(std::move(scales), base), UniformGrid{x0, dx, nt}, std::move(coeffs),
                     std::vector<bool>(ns, false)};
}

int run_command(const CommandConfig& c, std::ostream& out, std::ostream& err) {
    try {
        if (c.subcommand == "cwt") return cmd_cwt(c, out);
        if (c.subcommand == "admissibility") return cmd_admissibility(c, out);
        if (c.subcommand == "dual") return cmd_dual(c, out);
        if (c.subcommand == "reconstruct") return cmd_reconstruct(c, out);
        if (c.subcommand == "moments") return cmd_moments(c, out);
        if (c.subcommand == "uniqueness") return cmd_uniqueness(c, out);
        if (c.subcommand == "wavelets") return cmd_wavelets(out);
        throw ValidationError("unknown subcommand '" + c.subcommand + "'");
    } catch (const IoError& e) {
        err << "error: " << e.name() << ": " << e.what() << '\n';
        return 4;
    } catch (const TauberianFail& e) {
        err << "error: " << e.name() << ": " << e.what() << '\n';
        return 3;
    } catch (const DegenerateDenominator& e) {
        err << "error: " << e.name() << ": " << e.what() << '\n';
        return 3;
    } catch (const BandCoverage& e) {
        err << "error: " << e.name() << ": " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.name() << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: InternalError: " << e.what() << '\n';
        return 1;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CommandConfig c;
    CLI::App app{"Continuous wavelet transform and uniqueness tools", "wavuniq_cli"};
    app.require_subcommand(1);
    std::string format = "binary";

    auto add_wavelet = [&](CLI::App* sub) {
        sub->add_option("--wavelet", c.wavelet, "Wavelet name or sample CSV path");
        sub->add_option("--order", c.order, "Derivative order for gaussian_derivative")->check(CLI::PositiveNumber);
    };
    auto add_dual = [&](CLI::App* sub) {
        sub->add_option("--tau", c.tau, "Absolute cover threshold")->check(CLI::PositiveNumber);
        sub->add_option("--tau-rel", c.tau_rel, "Cover threshold relative to sup|psi^|")->check(CLI::PositiveNumber);
        sub->add_option("--b-min", c.b_min, "Minimum cover ratio b")->check(CLI::Range(1.0 + 1e-12, 1e300));
        sub->add_flag("--one-sided", c.one_sided, "Allow a cover on one side only");
    };

    auto* cwt_cmd = app.add_subcommand("cwt", "Scalogram of a signal CSV");
    cwt_cmd->add_option("--input", c.input)->required();
    cwt_cmd->add_option("--output", c.output);
    cwt_cmd->add_option("--scales", c.scales, "geom:b=<b|2^p/q>,jmin=<j>,jmax=<j> or list:s1,...");
    cwt_cmd->add_option("--format", format)->check(CLI::IsMember({"binary", "csv"}));
    cwt_cmd->add_option("--threads", c.threads);
    add_wavelet(cwt_cmd);

    auto* adm = app.add_subcommand("admissibility", "Tauberian and Calderon checks");
    adm->add_option("--tau", c.tau)->check(CLI::PositiveNumber);
    adm->add_option("--report", c.report);
    add_wavelet(adm);

    auto* dual = app.add_subcommand("dual", "Dual wavelet and partition-of-unity check");
    dual->add_option("--output", c.output, "CSV of dual spectrum samples");
    dual->add_option("--report", c.report);
    dual->add_option("--probes", c.probes)->check(CLI::PositiveNumber);
    dual->add_option("--omega-lo", c.omega_lo)->check(CLI::PositiveNumber);
    dual->add_option("--omega-hi", c.omega_hi)->check(CLI::PositiveNumber);
    add_wavelet(dual);
    add_dual(dual);

    auto* rec = app.add_subcommand("reconstruct", "Reproducing-formula reconstruction of a signal CSV");
    rec->add_option("--input", c.input)->required();
    rec->add_option("--output", c.output);
    rec->add_option("--report", c.report);
    rec->add_option("--mode", c.mode)->check(CLI::IsMember({"spectral", "temporal"}));
    add_wavelet(rec);
    add_dual(rec);

    auto* mom = app.add_subcommand("moments", "Moments M_0..M_L of a wavelet");
    mom->add_option("--max-order", c.max_order)->check(CLI::NonNegativeNumber);
    mom->add_option("--report", c.report);
    add_wavelet(mom);

    auto* uniq = app.add_subcommand("uniqueness", "Per-side energy certificate");
    uniq->add_option("--input", c.input)->required();
    uniq->add_option("--report", c.report);
    add_wavelet(uniq);

    auto* wl = app.add_subcommand("wavelets", "Wavelet catalogue");
    std::string action;
    wl->add_option("action", action)->required()->check(CLI::IsMember({"list"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: ParseError: " << e.what() << '\n';
        return 2;
    }
    c.subcommand = app.get_subcommands().front()->get_name();
    c.format = format == "csv" ? ScalogramFormat::csv : ScalogramFormat::binary;
    if (!(c.omega_hi > c.omega_lo)) {
        err << "error: ValidationError: --omega-hi must exceed --omega-lo\n";
        return 2;
    }
    return run_command(c, out, err);
}

}  // namespace wavuniq::cli
