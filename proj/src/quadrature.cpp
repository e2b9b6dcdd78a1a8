#include "spherepack/quadrature.hpp"

#include <map>
#include <utility>

namespace spherepack {

const GaussRule& gauss_legendre(unsigned order) {
    static std::map<std::pair<unsigned, unsigned>, GaussRule> cache;
    auto key = std::make_pair(order, current_digits());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    Real pi = pi_real();
    Real eps = pow(Real(10), -static_cast<int>(current_digits()) + 2);
    for (unsigned i = 0; i < order; ++i) {
        Real x = cos(pi * (Real(i) + Real("0.75")) / (Real(order) + Real("0.5")));
        Real dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            Real p0 = 1, p1 = x;
            for (unsigned k = 2; k <= order; ++k) {
                Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1);
            Real dx = p1 / dp;
            x -= dx;
            if (abs(dx) < eps) break;
        }
        Real p0 = 1, p1 = x;
        for (unsigned k = 2; k <= order; ++k) {
            Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = order * (x * p1 - p0) / (x * x - 1);
        rule.nodes[i] = x;
        rule.weights[i] = 2 / ((1 - x * x) * dp * dp);
    }
    return cache.emplace(key, std::move(rule)).first->second;
}

namespace {

std::pair<Real, Real> panel(const std::function<IntegrandValue(const Real&)>& f, const GaussRule& rule, const Real& a,
                            const Real& b, unsigned& evals) {
    Real mid = (a + b) / 2, half = (b - a) / 2;
    Real sum = 0, err = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        auto v = f(mid + half * rule.nodes[i]);
        sum += rule.weights[i] * v.value;
        err += rule.weights[i] * v.error;
        ++evals;
    }
    return {sum * half, err * abs(half)};
}

} // namespace

QuadratureResult integrate(const std::function<IntegrandValue(const Real&)>& f, const Real& a, const Real& b,
                           const AdaptiveOptions& opt) {
    const GaussRule& lo = gauss_legendre(opt.order);
    const GaussRule& hi = gauss_legendre(2 * opt.order);
    QuadratureResult res{Real(0), Real(0), 0};
    Real total = b - a;
    if (total == 0) return res;
    struct Panel {
        Real a, b;
        int depth;
    };
    std::vector<Panel> stack{{a, b, 0}};
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        auto [v1, e1] = panel(f, lo, p.a, p.b, res.evaluations);
        auto [v2, e2] = panel(f, hi, p.a, p.b, res.evaluations);
        Real diff = abs(v2 - v1);
        Real share = opt.target * abs((p.b - p.a) / total);
        if (diff <= share || p.depth >= opt.max_depth) {
            if (diff > share) throw NumericalError("quadrature failed to reach the requested error");
            res.value += v2;
            res.error += diff + e2;
            continue;
        }
        Real m = (p.a + p.b) / 2;
        // Push the right half first so panels are accumulated left to right.
        stack.push_back({m, p.b, p.depth + 1});
        stack.push_back({p.a, m, p.depth + 1});
    }
    return res;
}

} // namespace spherepack
