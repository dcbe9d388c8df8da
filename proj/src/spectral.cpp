#include "rbcom/spectral.hpp"

#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>

#include "rbcom/csv.hpp"

namespace rbcom {

Eigen::VectorXd Spectrum::freq_offsets() const {
    Eigen::VectorXd f(size());
    for (Eigen::Index i = 0; i < size(); ++i) f[i] = offset(i);
    return f;
}

double Spectrum::total_energy() const { return values.squaredNorm(); }

Spectrum make_spectrum(Eigen::Index n_bins, double bin_width) {
    if (n_bins < 2 || (n_bins & (n_bins - 1)) != 0)
        throw std::invalid_argument("spectrum size must be a power of two >= 2");
    if (!(bin_width > 0))
        throw std::invalid_argument("bin_width must be positive");
    Spectrum s;
    s.bin_width = bin_width;
    s.values = Eigen::VectorXcd::Zero(n_bins);
    return s;
}

Spectrum make_default_grid(double bandwidth_Bx, double f_offset) {
    if (!(bandwidth_Bx > 0) || !(f_offset > 0))
        throw std::invalid_argument("bandwidth_Bx and f_offset must be positive");
    double bin_width = bandwidth_Bx / 64.0;
    double span = f_offset + 2.0 * bandwidth_Bx;
    Eigen::Index half = 1;
    while (half * bin_width < span) half *= 2;
    return make_spectrum(2 * half, bin_width);
}

Spectrum modulated_spectrum(const Spectrum& x_baseband, double depth_m,
                            double bias_p, double f_offset) {
    const Eigen::Index n = x_baseband.size();
    if (n == 0 || !(x_baseband.bin_width > 0))
        throw std::invalid_argument("baseband spectrum has no grid");

    double ratio = f_offset / x_baseband.bin_width;
    auto shift = static_cast<Eigen::Index>(std::llround(ratio));
    if (std::fabs(ratio - static_cast<double>(shift)) > 1e-6)
        throw std::invalid_argument("f_offset is not on the spectral grid");

    Spectrum out = make_spectrum(n, x_baseband.bin_width);
    out.values[out.carrier_index()] += bias_p;
    for (Eigen::Index i = 0; i < n; ++i) {
        std::complex<double> v = x_baseband.values[i];
        if (v == std::complex<double>(0.0, 0.0)) continue;
        Eigen::Index up = i + shift;
        Eigen::Index down = i - shift;
        if (up < 0 || up >= n || down < 0 || down >= n)
            throw std::invalid_argument("grid too narrow for the shifted sidebands");
        out.values[up] += 0.5 * depth_m * v;
        out.values[down] += 0.5 * depth_m * v;
    }
    return out;
}

Spectrum apply_obpf(const Spectrum& s, const ObpfSpec& filt) {
    if (!(filt.bandwidth_Bf > 0))
        throw std::invalid_argument("filter bandwidth must be positive");
    Spectrum out = s;
    const double half = filt.bandwidth_Bf / 2.0;
    const double eps = 1e-9 * s.bin_width; // grid offsets are fp products
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (std::fabs(s.offset(i) - filt.center_offset) > half + eps)
            out.values[i] = 0.0;
    }
    return out;
}

Spectrum echo_purify(const Spectrum& received, double r2, double t_s,
                     double eta_d, const ObpfSpec& filt) {
    // Occupancy check: inside the passband only the carrier bin may hold
    // energy, otherwise the filter geometry assumed by the cavity is broken.
    const double half = filt.bandwidth_Bf / 2.0;
    const double eps = 1e-9 * received.bin_width;
    double in_band = 0.0;
    for (Eigen::Index i = 0; i < received.size(); ++i) {
        if (i == received.carrier_index()) continue;
        if (std::fabs(received.offset(i) - filt.center_offset) <= half + eps)
            in_band += std::norm(received.values[i]);
    }
    if (in_band > 1e-9 * received.total_energy())
        throw std::runtime_error("unexpected spectral content inside the filter passband");

    Spectrum out = apply_obpf(apply_obpf(received, filt), filt);
    out.values *= r2 * t_s * eta_d;
    return out;
}

double residual_information_energy(const Spectrum& s) {
    double total = s.total_energy();
    if (total <= 0) return 0.0;
    double carrier = std::norm(s.values[s.carrier_index()]);
    double res = (total - carrier) / total;
    return res < 0 ? 0.0 : (res > 1 ? 1.0 : res);
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
    os << "offset_hz,re,im,magnitude\n";
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        os << format_number(s.offset(i)) << ',' << format_number(s.values[i].real())
           << ',' << format_number(s.values[i].imag()) << ','
           << format_number(std::abs(s.values[i])) << '\n';
    }
}

} // namespace rbcom
