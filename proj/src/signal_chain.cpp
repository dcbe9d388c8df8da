#include "rbcom/signal_chain.hpp"

#include <cmath>
#include <complex>
#include <ostream>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

#include "rbcom/csv.hpp"
#include "rbcom/link_metrics.hpp"

namespace rbcom {
namespace {

using cplx = std::complex<double>;

Eigen::VectorXcd fft_forward(const Eigen::VectorXd& x) {
    Eigen::FFT<double> fft;
    Eigen::VectorXcd spec(x.size());
    Eigen::VectorXcd in = x.cast<cplx>();
    fft.fwd(spec, in);
    return spec;
}

Eigen::VectorXd fft_inverse_real(const Eigen::VectorXcd& spec) {
    Eigen::FFT<double> fft;
    Eigen::VectorXcd out(spec.size());
    fft.inv(out, spec);
    return out.real();
}

// two-sided frequency of DFT bin k
double bin_freq(Eigen::Index k, Eigen::Index n, double fs) {
    double f = static_cast<double>(k) * fs / static_cast<double>(n);
    if (2 * k > n) f -= fs;
    return f;
}

// Blackman-windowed sinc low-pass, unit DC gain, odd length
Eigen::VectorXd lowpass_fir(double cutoff, double fs, Eigen::Index len) {
    Eigen::VectorXd h(len);
    const Eigen::Index mid = (len - 1) / 2;
    const double fc = cutoff / fs;
    for (Eigen::Index i = 0; i < len; ++i) {
        double x = static_cast<double>(i - mid);
        double s = x == 0.0 ? 2.0 * fc : std::sin(2.0 * M_PI * fc * x) / (M_PI * x);
        double a = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(len - 1);
        double w = 0.42 - 0.5 * std::cos(a) + 0.08 * std::cos(2.0 * a);
        h[i] = s * w;
    }
    h /= h.sum();
    return h;
}

// zero-padded convolution aligned to the input grid (symmetric h -> zero phase)
Eigen::VectorXd conv_same(const Eigen::VectorXd& x, const Eigen::VectorXd& h) {
    const Eigen::Index n = x.size(), len = h.size(), mid = (len - 1) / 2;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::Index lo = std::max<Eigen::Index>(0, j + mid - n + 1);
        Eigen::Index hi = std::min<Eigen::Index>(len - 1, j + mid);
        double acc = 0.0;
        for (Eigen::Index i = lo; i <= hi; ++i) acc += h[i] * x[j + mid - i];
        y[j] = acc;
    }
    return y;
}

} // namespace

SampledSignal multitone_signal(double sample_rate, Eigen::Index n,
                               const std::vector<Tone>& tones) {
    if (!(sample_rate > 0) || n <= 0)
        throw std::invalid_argument("multitone_signal needs a positive grid");
    SampledSignal s;
    s.sample_rate = sample_rate;
    s.samples = Eigen::VectorXd::Zero(n);
    for (const Tone& tone : tones)
        for (Eigen::Index j = 0; j < n; ++j)
            s.samples[j] += tone.amplitude *
                std::cos(2.0 * M_PI * tone.freq * static_cast<double>(j) / sample_rate +
                         tone.phase);
    return s;
}

SampledSignal random_band_signal(double sample_rate, Eigen::Index n,
                                 double bandwidth, std::uint64_t seed) {
    if (!(sample_rate > 0) || n <= 0)
        throw std::invalid_argument("random_band_signal needs a positive grid");
    Eigen::Index kmax = static_cast<Eigen::Index>(
        std::floor(bandwidth * static_cast<double>(n) / sample_rate));
    kmax = std::min(kmax, n / 2 - 1);
    if (kmax < 1)
        throw std::invalid_argument("bandwidth below the record's frequency resolution");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd spec = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index k = 1; k <= kmax; ++k) {
        cplx v(g(rng), g(rng));
        spec[k] = v;
        spec[n - k] = std::conj(v);
    }
    SampledSignal s;
    s.sample_rate = sample_rate;
    s.samples = fft_inverse_real(spec);
    double peak = s.samples.cwiseAbs().maxCoeff();
    if (peak > 0) s.samples *= 0.99 / peak;
    return s;
}

SampledSignal preprocess_source(const SampledSignal& x, double depth_m,
                                double bias_p, double f_offset) {
    if (!(x.sample_rate > 0) || x.samples.size() == 0)
        throw std::invalid_argument("empty source signal");
    if (depth_m < 0 || bias_p < 0)
        throw std::invalid_argument("depth_m and bias_p must be non-negative");
    if (bias_p - depth_m < 0)
        throw std::invalid_argument("bias_p - depth_m must be >= 0");
    if (bias_p + depth_m > 1.0 + 1e-12)
        throw std::invalid_argument("bias_p + depth_m must be <= 1");
    if (x.sample_rate < 4.0 * f_offset)
        throw std::invalid_argument(
            "sample_rate must be at least 4*(f_offset + bandwidth_Bx)");
    if (x.samples.cwiseAbs().maxCoeff() > 1.0 + 1e-12)
        throw std::invalid_argument("source signal must stay inside [-1, 1]");

    SampledSignal drive;
    drive.sample_rate = x.sample_rate;
    drive.samples.resize(x.samples.size());
    for (Eigen::Index j = 0; j < x.samples.size(); ++j) {
        double t = static_cast<double>(j) / x.sample_rate;
        drive.samples[j] =
            depth_m * x.samples[j] * std::cos(2.0 * M_PI * f_offset * t) + bias_p;
    }
    return drive;
}

FieldEnvelope modulate(double carrier_ac, const SampledSignal& drive,
                       double carrier_ref) {
    if (carrier_ac < 0)
        throw std::invalid_argument("carrier amplitude must be non-negative");
    FieldEnvelope f;
    f.sample_rate = drive.sample_rate;
    f.samples = carrier_ac * drive.samples;
    f.carrier_ref = carrier_ref;
    return f;
}

FieldEnvelope propagate(const FieldEnvelope& field, double eta_d) {
    if (!(eta_d > 0) || eta_d > 1.0)
        throw std::invalid_argument("eta_d must be in (0, 1]");
    FieldEnvelope f = field;
    f.samples *= eta_d;
    return f;
}

SplitField split(const FieldEnvelope& field, double r_s) {
    if (r_s < 0 || r_s >= 1.0)
        throw std::invalid_argument("0 <= r_s < 1");
    SplitField out{field, field};
    out.to_detector.samples *= r_s;
    out.to_retro.samples *= splitter_transmission(r_s);
    return out;
}

PhotocurrentTrace photodetect(const FieldEnvelope& field, const DetectorParams& det,
                              double beam_area_ab, double z0,
                              const NoiseConfig& noise) {
    const double k =
        detector_k(det.detect_efficiency, det.responsivity_rho, beam_area_ab, z0);
    PhotocurrentTrace trace;
    trace.sample_rate = field.sample_rate;
    trace.samples = k * field.samples.array().square();
    trace.mean_current = trace.samples.mean();
    if (noise.enabled) {
        double n0 = 2.0 * kElectronChargeQ *
                        (trace.mean_current + det.background_current_Ibk) +
                    4.0 * kBoltzmannK * det.temperature_T / det.load_R_L;
        double sigma = std::sqrt(n0 * field.sample_rate / 2.0);
        std::mt19937_64 rng(noise.seed);
        std::normal_distribution<double> g(0.0, sigma);
        for (Eigen::Index j = 0; j < trace.samples.size(); ++j)
            trace.samples[j] += g(rng);
    }
    return trace;
}

DemodResult coherent_demodulate(const PhotocurrentTrace& trace, double f_offset,
                                double bandwidth_bx) {
    if (!(bandwidth_bx > 0))
        throw std::invalid_argument("bandwidth_Bx must be positive");
    if (!(f_offset > 3.0 * bandwidth_bx))
        throw std::invalid_argument(
            "f_offset > 3*bandwidth_Bx is required for band separation");
    const double fs = trace.sample_rate;
    const Eigen::Index n = trace.samples.size();
    if (fs < 4.0 * (f_offset + bandwidth_bx))
        throw std::invalid_argument(
            "sample_rate must be at least 4*(f_offset + bandwidth_Bx)");

    // Half the spectral gap on the tighter side of the wanted band limits the
    // FIR transition width; 2.75*fs/len is the Blackman transition half-width.
    const double gap =
        std::min((f_offset - 3.0 * bandwidth_bx) / 2.0, bandwidth_bx / 2.0);
    Eigen::Index len = static_cast<Eigen::Index>(std::ceil(2.75 * fs / gap));
    if (len % 2 == 0) ++len;
    if (n < 10 * len + 16)
        throw std::invalid_argument("record too short for the filter transients");

    const Eigen::Index mid = (len - 1) / 2;
    Eigen::VectorXd proto = lowpass_fir(bandwidth_bx + gap, fs, len);
    Eigen::VectorXd hbp(len);
    for (Eigen::Index i = 0; i < len; ++i)
        hbp[i] = 2.0 * proto[i] *
                 std::cos(2.0 * M_PI * f_offset * static_cast<double>(i - mid) / fs);

    Eigen::VectorXd banded = conv_same(trace.samples, hbp);
    for (Eigen::Index j = 0; j < n; ++j)
        banded[j] *= std::cos(2.0 * M_PI * f_offset * static_cast<double>(j) / fs);
    Eigen::VectorXd low = conv_same(banded, proto);

    DemodResult out;
    out.sample_rate = fs;
    out.start = 5 * len;
    out.samples = low.segment(out.start, n - 10 * len);
    return out;
}

FieldEnvelope echo_field(const FieldEnvelope& to_retro, double r2, double eta_d,
                         double bias_p, const ObpfSpec& filt) {
    if (filt.center_offset != 0.0)
        throw std::invalid_argument("time-domain OBPF must be carrier-centred");
    if (!(filt.bandwidth_Bf > 0))
        throw std::invalid_argument("filter bandwidth must be positive");
    if (r2 < 0 || r2 > 1.0) throw std::invalid_argument("0 <= r2 <= 1");
    if (!(eta_d > 0) || eta_d > 1.0)
        throw std::invalid_argument("eta_d must be in (0, 1]");

    const Eigen::Index n = to_retro.samples.size();
    const double fs = to_retro.sample_rate;
    Eigen::VectorXcd spec = fft_forward(to_retro.samples);

    const double half = filt.bandwidth_Bf / 2.0;
    const double eps = 1e-9 * fs / static_cast<double>(n);
    const double total = spec.squaredNorm();
    double in_band = 0.0;
    for (Eigen::Index k = 1; k < n; ++k)
        if (std::fabs(bin_freq(k, n, fs)) <= half + eps) in_band += std::norm(spec[k]);
    if (in_band > 1e-9 * total)
        throw std::runtime_error("unexpected spectral content inside the filter passband");
    if (bias_p <= 0.0 && std::norm(spec[0]) > 1e-9 * total)
        throw std::runtime_error("unexpected spectral content inside the filter passband");

    for (Eigen::Index k = 0; k < n; ++k)
        if (std::fabs(bin_freq(k, n, fs)) > half + eps) spec[k] = 0.0;
    spec *= r2 * eta_d; // OBPF twice is still one brick-wall projection

    FieldEnvelope out = to_retro;
    out.samples = fft_inverse_real(spec);
    return out;
}

double band_energy(const Eigen::VectorXd& samples, double sample_rate,
                   double f_lo, double f_hi) {
    const Eigen::Index n = samples.size();
    if (n == 0) return 0.0;
    Eigen::VectorXcd spec = fft_forward(samples);
    const double eps = 1e-6 * sample_rate / static_cast<double>(n);
    double acc = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        double f = std::fabs(bin_freq(k, n, sample_rate));
        if (f >= f_lo - eps && f <= f_hi + eps) acc += std::norm(spec[k]);
    }
    return acc / (static_cast<double>(n) * static_cast<double>(n));
}

double pearson_correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("series must share one grid");
    if (a.maxCoeff() == a.minCoeff() || b.maxCoeff() == b.minCoeff())
        throw std::domain_error("undefined correlation for a constant series");
    Eigen::VectorXd da = a.array() - a.mean();
    Eigen::VectorXd db = b.array() - b.mean();
    return da.dot(db) / std::sqrt(da.squaredNorm() * db.squaredNorm());
}

Spectrum envelope_spectrum(const FieldEnvelope& field) {
    const Eigen::Index n = field.samples.size();
    Spectrum out = make_spectrum(n, field.sample_rate / static_cast<double>(n));
    Eigen::VectorXcd spec = fft_forward(field.samples);
    for (Eigen::Index i = 0; i < n; ++i)
        out.values[i] = spec[(i - n / 2 + n) % n] / static_cast<double>(n);
    return out;
}

void write_trace_csv(std::ostream& os, const SampledSignal& s) {
    os << "t,value\n";
    for (Eigen::Index j = 0; j < s.samples.size(); ++j)
        os << format_number(static_cast<double>(j) / s.sample_rate) << ','
           << format_number(s.samples[j]) << '\n';
}

} // namespace rbcom
