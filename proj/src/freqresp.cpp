#include "paulistab/freqresp.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

namespace pstab {

namespace {

// Denominator magnitudes below this absolute floor count as a pole hit.
constexpr double kPoleFloor = 1e-300;

complex polyval(std::span<const double> coeffs, complex s) {
    complex acc = 0.0;
    for (double c : coeffs) acc = acc * s + c;
    return acc;
}

} // namespace

struct TransferElement::Node {
    struct Rational {
        std::vector<double> num;
        std::vector<double> den;
        double delay;
    };
    struct Sum {
        TransferElement a, b;
    };
    struct Product {
        TransferElement a, b;
    };
    struct Inverse {
        TransferElement a;
    };
    struct Scale {
        complex factor;
        TransferElement a;
    };
    std::variant<Rational, Sum, Product, Inverse, Scale> v;
};

TransferElement TransferElement::rational(std::vector<double> num,
                                          std::vector<double> den,
                                          double delay_s) {
    if (den.empty() || std::all_of(den.begin(), den.end(), [](double c) { return c == 0.0; }))
        throw InvalidRange("rational: denominator is the zero polynomial");
    if (delay_s < 0.0)
        throw InvalidRange("rational: delay must be >= 0");
    if (num.empty()) num = {0.0};
    auto n = std::make_shared<Node>();
    n->v = Node::Rational{std::move(num), std::move(den), delay_s};
    return TransferElement(std::move(n));
}

TransferElement TransferElement::constant(double value) {
    return rational({value}, {1.0});
}

TransferElement TransferElement::identity() {
    return constant(1.0);
}

TransferElement TransferElement::delay(double delay_s) {
    return rational({1.0}, {1.0}, delay_s);
}

complex TransferElement::evaluate(complex s) const {
    const Node& n = *node_;
    if (const auto* r = std::get_if<Node::Rational>(&n.v)) {
        complex den = polyval(r->den, s);
        if (std::abs(den) < kPoleFloor)
            throw PoleHit("evaluate: denominator vanishes at s = (" +
                          std::to_string(s.real()) + ", " + std::to_string(s.imag()) + ")");
        complex val = polyval(r->num, s) / den;
        if (r->delay > 0.0) val *= std::exp(-s * r->delay);
        return val;
    }
    if (const auto* sum = std::get_if<Node::Sum>(&n.v))
        return sum->a.evaluate(s) + sum->b.evaluate(s);
    if (const auto* prod = std::get_if<Node::Product>(&n.v))
        return prod->a.evaluate(s) * prod->b.evaluate(s);
    if (const auto* inv = std::get_if<Node::Inverse>(&n.v)) {
        complex val = inv->a.evaluate(s);
        if (std::abs(val) < kPoleFloor)
            throw PoleHit("evaluate: inverse of a vanishing element");
        return 1.0 / val;
    }
    const auto& sc = std::get<Node::Scale>(n.v);
    return sc.factor * sc.a.evaluate(s);
}

TransferElement TransferElement::inverse() const {
    auto n = std::make_shared<Node>();
    n->v = Node::Inverse{*this};
    return TransferElement(std::move(n));
}

TransferElement TransferElement::scaled(complex factor) const {
    auto n = std::make_shared<Node>();
    n->v = Node::Scale{factor, *this};
    return TransferElement(std::move(n));
}

TransferElement operator+(const TransferElement& a, const TransferElement& b) {
    auto n = std::make_shared<TransferElement::Node>();
    n->v = TransferElement::Node::Sum{a, b};
    return TransferElement(std::move(n));
}

TransferElement operator*(const TransferElement& a, const TransferElement& b) {
    auto n = std::make_shared<TransferElement::Node>();
    n->v = TransferElement::Node::Product{a, b};
    return TransferElement(std::move(n));
}

FrequencyGrid::FrequencyGrid(std::vector<double> omega_rad) : omega_(std::move(omega_rad)) {
    if (omega_.empty())
        throw InvalidRange("FrequencyGrid: empty");
    double prev = 0.0;
    for (double w : omega_) {
        if (!(w > 0.0))
            throw InvalidRange("FrequencyGrid: frequencies must be > 0");
        if (!(w > prev))
            throw InvalidRange("FrequencyGrid: frequencies must be strictly increasing");
        prev = w;
    }
}

FrequencyGrid make_log_grid(double f_min_hz, double f_max_hz, int points_per_decade) {
    if (!(f_min_hz > 0.0) || !(f_min_hz < f_max_hz))
        throw InvalidRange("make_log_grid: need 0 < f_min < f_max");
    if (points_per_decade < 1)
        throw InvalidRange("make_log_grid: points_per_decade must be >= 1");
    const double lo = std::log10(f_min_hz);
    const double hi = std::log10(f_max_hz);
    int intervals = static_cast<int>(std::lround((hi - lo) * points_per_decade));
    intervals = std::max(intervals, 1);
    std::vector<double> omega;
    omega.reserve(intervals + 1);
    for (int k = 0; k <= intervals; ++k) {
        double f = (k == 0)           ? f_min_hz
                   : (k == intervals) ? f_max_hz
                                      : std::pow(10.0, lo + (hi - lo) * k / intervals);
        omega.push_back(2.0 * pi * f);
    }
    return FrequencyGrid(std::move(omega));
}

FrequencyGrid refine_around(const FrequencyGrid& g, double f_center_hz,
                            double span_hz, int points) {
    if (span_hz < 0.0 || points < 1)
        throw InvalidRange("refine_around: span must be >= 0 and points >= 1");
    if (!(f_center_hz - span_hz / 2.0 > 0.0))
        throw InvalidRange("refine_around: refinement window crosses 0 Hz");
    std::vector<double> omega(g.omega().begin(), g.omega().end());
    if (span_hz == 0.0 || points == 1) {
        omega.push_back(2.0 * pi * f_center_hz);
    } else {
        const double f0 = f_center_hz - span_hz / 2.0;
        const double step = span_hz / (points - 1);
        for (int k = 0; k < points; ++k)
            omega.push_back(2.0 * pi * (f0 + step * k));
    }
    std::sort(omega.begin(), omega.end());
    omega.erase(std::unique(omega.begin(), omega.end()), omega.end());
    return FrequencyGrid(std::move(omega));
}

} // namespace pstab
