#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "paulistab/errors.hpp"

namespace pstab {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Scalar transfer element: a real-coefficient rational function of s with an
/// optional pure delay factor exp(-s*Td), or a composition node (sum, product,
/// inverse, complex scale) over child elements. Immutable, cheap to copy,
/// safe to evaluate concurrently.
class TransferElement {
  public:
    // num/den hold real coefficients in descending powers of s.
    static TransferElement rational(std::vector<double> num,
                                    std::vector<double> den,
                                    double delay_s = 0.0);
    static TransferElement constant(double value);
    static TransferElement identity();           // 1
    static TransferElement delay(double delay_s); // exp(-s*Td)

    complex evaluate(complex s) const;

    TransferElement inverse() const;
    TransferElement scaled(complex factor) const;

    friend TransferElement operator+(const TransferElement& a, const TransferElement& b);
    friend TransferElement operator*(const TransferElement& a, const TransferElement& b);

  private:
    struct Node;
    explicit TransferElement(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Ordered set of angular frequencies, strictly increasing, all > 0.
class FrequencyGrid {
  public:
    FrequencyGrid() = default;
    // Takes angular frequencies in rad/s; validates ordering and positivity.
    explicit FrequencyGrid(std::vector<double> omega_rad);

    std::span<const double> omega() const { return omega_; }
    std::size_t size() const { return omega_.size(); }
    double omega_at(std::size_t i) const { return omega_[i]; }
    double hz_at(std::size_t i) const { return omega_[i] / (2.0 * pi); }

  private:
    std::vector<double> omega_;
};

// Logarithmically spaced grid between f_min and f_max (Hz), both endpoints
// included. points_per_decade sets the sample density.
FrequencyGrid make_log_grid(double f_min_hz, double f_max_hz, int points_per_decade);

// Merge `points` linear samples spanning f_center +- span/2 (Hz) into g.
// span == 0 (or points == 1) inserts f_center alone.
FrequencyGrid refine_around(const FrequencyGrid& g, double f_center_hz,
                            double span_hz, int points);

} // namespace pstab
