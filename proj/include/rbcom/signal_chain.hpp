#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "rbcom/config.hpp"
#include "rbcom/spectral.hpp"

namespace rbcom {

// Uniformly sampled real-valued series (source signals, drive waveforms,
// demodulated output).
struct SampledSignal {
    double sample_rate = 0.0; // Hz
    Eigen::VectorXd samples;
};

// Real optical envelope about the carrier. The chain is amplitude-only, so the
// optical phase is pinned at zero; carrier_ref is bookkeeping and never enters
// the arithmetic.
struct FieldEnvelope {
    double sample_rate = 0.0; // Hz
    Eigen::VectorXd samples;  // V/m
    double carrier_ref = 282e12;
};

struct PhotocurrentTrace {
    double sample_rate = 0.0;  // Hz
    Eigen::VectorXd samples;   // A
    double mean_current = 0.0; // time average of the noiseless trace, A
};

// Reproducibility contract: the only randomness in the chain comes from this
// seed; ambient global state is never touched.
struct NoiseConfig {
    bool enabled = false;
    std::uint64_t seed = 0;
};

struct Tone {
    double freq = 0.0;      // Hz
    double amplitude = 0.0;
    double phase = 0.0;     // rad
};

// Sum of cosines. Put frequencies on the record's DFT grid (k * fs/n) when the
// record must be exactly periodic.
SampledSignal multitone_signal(double sample_rate, Eigen::Index n,
                               const std::vector<Tone>& tones);

// Zero-mean random signal, exactly band-limited to `bandwidth` on the DFT grid
// and peak-normalized to 0.99 so it is a legal source. Deterministic per seed.
SampledSignal random_band_signal(double sample_rate, Eigen::Index n,
                                 double bandwidth, std::uint64_t seed);

// Mixing + bias: drive(t) = depth_m * x(t) * cos(2 pi f_offset t) + bias_p,
// guaranteed inside [bias_p - depth_m, bias_p + depth_m] subset of [0, 1].
SampledSignal preprocess_source(const SampledSignal& x, double depth_m,
                                double bias_p, double f_offset);

// Electro-optic modulation: envelope = drive(t) * carrier_Ac.
FieldEnvelope modulate(double carrier_ac, const SampledSignal& drive,
                       double carrier_ref = 282e12);

// One-way pass through the cavity path: pointwise scaling by eta_d.
FieldEnvelope propagate(const FieldEnvelope& field, double eta_d);

struct SplitField {
    FieldEnvelope to_detector; // r_s * field
    FieldEnvelope to_retro;    // sqrt(1 - r_s^2) * field
};

// Beam splitter: energy-conserving amplitude split (r_s^2 + t_s^2 = 1).
SplitField split(const FieldEnvelope& field, double r_s);

// Square-law detection i(t) = k*|env|^2 + n(t), k = eta_det*rho*A_b/Z0. When
// noise is enabled, n is white Gaussian over the whole Nyquist band with
// per-sample variance (2q(I+I_bk) + 4KT/R_L) * fs/2, so any band of width B
// carries that band's analytic noise power. mean_current always reports the
// noiseless average.
PhotocurrentTrace photodetect(const FieldEnvelope& field, const DetectorParams& det,
                              double beam_area_ab, double z0,
                              const NoiseConfig& noise = {});

// Demodulated series plus its alignment: samples[j] corresponds to input
// sample start + j after the transient discard.
struct DemodResult {
    double sample_rate = 0.0;
    Eigen::VectorXd samples; // A
    Eigen::Index start = 0;
};

// Band extraction around f_offset, mixing with cos(2 pi f_offset t), low-pass
// to the information band. The filters are linear-phase windowed-sinc FIRs
// with group delay compensated; cutoffs sit mid-gap between the wanted band
// and its neighbours so the band of interest passes at unit gain and the
// DC/baseband/double-frequency terms land in the stopband. Ten filter lengths
// of transient are discarded (half at each end).
DemodResult coherent_demodulate(const PhotocurrentTrace& trace, double f_offset,
                                double bandwidth_bx);

// Receiver echo branch: OBPF crossing, reflection off r2, OBPF crossing again,
// return pass through the cavity path. t_s is already inside to_retro (it came
// out of split); the brick-wall projection is idempotent so one application
// covers both crossings. bias_p states whether a carrier line is expected:
// with bias_p = 0 any surviving carrier-bin energy is as unexpected as
// sideband energy inside the passband.
FieldEnvelope echo_field(const FieldEnvelope& to_retro, double r2, double eta_d,
                         double bias_p, const ObpfSpec& filt);

// Mean-square content of the series carried by DFT bins with
// f_lo <= |f| <= f_hi.
double band_energy(const Eigen::VectorXd& samples, double sample_rate,
                   double f_lo, double f_hi);

// Throws std::domain_error for a constant input series.
double pearson_correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Two-sided envelope spectrum on the spectral module's grid convention
// (requires a power-of-two record).
Spectrum envelope_spectrum(const FieldEnvelope& field);

// Columns: t,value.
void write_trace_csv(std::ostream& os, const SampledSignal& s);

} // namespace rbcom
