#pragma once

#include <iosfwd>

#include <Eigen/Dense>

namespace rbcom {

// Two-sided envelope spectrum on a uniform grid of frequency offsets from the
// optical carrier. Bin i sits at (i - n/2)*bin_width, so the carrier component
// lives at index n/2 and n must be a power of two. Values are exponential-basis
// coefficients: env(t) = sum_i values[i] * exp(+i*2*pi*offset_i*t); a real
// envelope therefore has Hermitian-symmetric bins, and a cosine tone of
// amplitude c splits into two bins of c/2.
struct Spectrum {
    double bin_width = 0.0; // Hz
    Eigen::VectorXcd values;

    Eigen::Index size() const { return values.size(); }
    Eigen::Index carrier_index() const { return size() / 2; }
    double offset(Eigen::Index i) const {
        return (static_cast<double>(i) - static_cast<double>(size() / 2)) * bin_width;
    }
    Eigen::VectorXd freq_offsets() const;
    double total_energy() const; // sum |values|^2
};

// Zeroed spectrum; n_bins must be a power of two >= 2, bin_width > 0.
Spectrum make_spectrum(Eigen::Index n_bins, double bin_width);

// Grid sized for a modulated signal: bin_width = bandwidth_Bx/64 and range
// covering +-(f_offset + 2*bandwidth_Bx).
Spectrum make_default_grid(double bandwidth_Bx, double f_offset);

// Ideal rectangular optical band-pass filter riding on the carrier.
struct ObpfSpec {
    double center_offset = 0.0; // Hz relative to the carrier
    double bandwidth_Bf = 0.0;  // full passband width, Hz
};

// Spectrum of the modulated envelope p + m*x(t)*cos(2*pi*f_offset*t), given the
// two-sided baseband spectrum of x on the same grid: the carrier bin gains
// bias_p and each baseband bin is copied at +-f_offset scaled by depth_m/2
// (for a real tone that is the familiar four images of m/4 each). Amplitudes
// are normalized to a unit carrier; A_c and the propagation losses are applied
// by the time-domain chain.
Spectrum modulated_spectrum(const Spectrum& x_baseband, double depth_m,
                            double bias_p, double f_offset);

// Brick-wall filtering: bins with |offset - center| <= Bf/2 pass untouched,
// everything else is zeroed. Idempotent linear projection.
Spectrum apply_obpf(const Spectrum& s, const ObpfSpec& filt);

// Receiver-end purification of the echo: the beam crosses the OBPF, reflects
// off r2, crosses the OBPF again, and travels back through the splitter and
// the cavity path, so the output is r2*t_s*eta_d times the double-filtered
// input. Rejects inputs carrying energy inside the passband away from the
// carrier bin (> 1e-9 of total), since the whole point of the filter geometry
// is that nothing but the carrier survives.
Spectrum echo_purify(const Spectrum& received, double r2, double t_s,
                     double eta_d, const ObpfSpec& filt);

// Fraction of total energy held by bins other than the carrier bin; 0 for a
// pure carrier (and for an empty spectrum), up to 1.
double residual_information_energy(const Spectrum& s);

// Columns: offset_hz,re,im,magnitude.
void write_spectrum_csv(std::ostream& os, const Spectrum& s);

} // namespace rbcom
