#include "bmlab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace bmlab::quad {

const GLTable& gauss_legendre(int order, long prec_bits) {
    static std::mutex mu;
    static std::map<std::pair<int, long>, GLTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(order, prec_bits);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    GLTable full;
    for (int i = 1; 2 * i <= order + 1; ++i) {
        bool central = (order & 1) && (2 * i == order + 1);
        // Newton iteration on P_n from the Chebyshev-like initial guess
        Real x(prec_bits);
        if (!central)
            mpfr_set_d(x.raw(), std::cos(3.14159265358979 * (i - 0.25) / (order + 0.5)), MPFR_RNDN);
        Real dp(prec_bits);
        for (int pass = 0; pass < 200; ++pass) {
            Real p0(1, prec_bits), p1 = x;
            for (int k = 2; k <= order; ++k) {
                Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = std::move(p1);
                p1 = std::move(p2);
            }
            dp = order * (x * p1 - p0) / (x * x - 1);
            if (central) break;  // x = 0 is exact; only dp was needed
            Real dx = p1 / dp;
            x -= dx;
            if (abs(dx) < mul_2si(abs(x) + 1, -prec_bits + 8)) break;
        }
        Real w = 2 / ((1 - x * x) * dp * dp);
        if (central) {
            full.x.push_back(x);
            full.w.push_back(w);
        } else {
            full.x.push_back(x);
            full.w.push_back(w);
            full.x.push_back(-x);
            full.w.push_back(w);
        }
    }
    auto res = cache.emplace(key, std::move(full));
    return res.first->second;
}

Real gl_apply(const Fn& f, const Real& a, const Real& b, int order, long prec_bits) {
    const GLTable& t = gauss_legendre(order, prec_bits);
    Real mid = (a + b) / 2;
    Real half = (b - a) / 2;
    Real s(prec_bits);
    for (size_t i = 0; i < t.x.size(); ++i) s += t.w[i] * f(mid + half * t.x[i]);
    return s * half;
}

namespace {
Estimate gl_adaptive_rec(const Fn& f, const Real& a, const Real& b, long prec_bits,
                         const Real& target_abs, int order, int depth) {
    Real lo = gl_apply(f, a, b, order, prec_bits);
    Real hi = gl_apply(f, a, b, 2 * order, prec_bits);
    Real err = abs(hi - lo);
    Estimate e{hi, err, 3L * order};
    if (err <= target_abs || depth <= 0) return e;
    Real mid = (a + b) / 2;
    Real half_target = target_abs / 2;
    Estimate l = gl_adaptive_rec(f, a, mid, prec_bits, half_target, order, depth - 1);
    Estimate r = gl_adaptive_rec(f, mid, b, prec_bits, half_target, order, depth - 1);
    return Estimate{l.value + r.value, l.abs_error + r.abs_error,
                    e.evaluations + l.evaluations + r.evaluations};
}
}  // namespace

Estimate gl_adaptive(const Fn& f, const Real& a, const Real& b, long prec_bits,
                     const Real& target_abs, int order, int max_depth) {
    return gl_adaptive_rec(f, a, b, prec_bits, target_abs, order, max_depth);
}

Estimate tanh_sinh(const Fn& f, const Real& a, const Real& b, long prec_bits,
                   const Real& target_abs, int max_level) {
    // x(t) = mid + half*tanh((pi/2) sinh t); nodes stored as offsets from the
    // endpoints: offset = (b-a) / (1 + e^(2v)), v = (pi/2) sinh t.
    Real pi = const_pi(prec_bits);
    Real len = b - a;
    Real half_pi = pi / 2;
    // t range: stop when the node weight underflows the target
    double t_max = std::log(2.0 / 3.14159265 * (0.6931 * (prec_bits + 16))) + 1.0;

    auto node = [&](const Real& tt, Real& off, Real& wt) {
        Real sh = (exp(tt) - exp(-tt)) / 2;
        Real ch = (exp(tt) + exp(-tt)) / 2;
        Real v = half_pi * sh;
        Real e2v = exp(-2 * v);          // in (0,1] for v >= 0
        off = len * e2v / (1 + e2v);     // distance from the nearer endpoint
        Real sech = 2 / (exp(v) + exp(-v));
        wt = half_pi * ch * sech * sech;
    };

    Real h(1, prec_bits);
    Real sum(prec_bits);
    long evals = 0;
    {
        Real off, wt;
        node(Real(prec_bits), off, wt);
        sum = wt * f(a + len / 2);
        evals++;
        for (Real tt = h;; tt += h) {
            if (tt.to_double() > t_max) break;
            node(tt, off, wt);
            sum += wt * (f(a + off) + f(b - off));
            evals += 2;
        }
    }
    Real prev = sum * h * len / 2;
    Real err = abs(prev);
    for (int level = 1; level <= max_level; ++level) {
        h /= 2;
        Real part(prec_bits);
        // odd multiples of the new h
        for (Real tt = h;; tt += 2 * h) {
            if (tt.to_double() > t_max) break;
            Real off, wt;
            node(tt, off, wt);
            part += wt * (f(a + off) + f(b - off));
            evals += 2;
        }
        sum += part;
        Real cur = sum * h * len / 2;
        err = abs(cur - prev);
        prev = cur;
        if (err <= target_abs && level >= 3) break;
    }
    return Estimate{prev, err, evals};
}

std::vector<Real> wynn_epsilon(const std::vector<Real>& sums) {
    if (sums.empty()) return {};
    long prec = sums[0].prec();
    std::vector<Real> prev_col(sums.size(), Real(prec));  // eps_{-1} = 0
    std::vector<Real> col = sums;                         // eps_0
    std::vector<Real> diag;
    diag.push_back(col.back());
    Real tiny = mul_2si(Real(1, prec), -prec * 3);
    for (size_t j = 1; j < sums.size(); ++j) {
        std::vector<Real> next;
        next.reserve(col.size() - 1);
        for (size_t k = 0; k + 1 < col.size(); ++k) {
            Real d = col[k + 1] - col[k];
            if (abs(d) < tiny) d = d.sign() >= 0 ? tiny : -tiny;
            next.push_back(prev_col[k + 1] + 1 / d);
        }
        prev_col = std::move(col);
        col = std::move(next);
        if (j % 2 == 0 && !col.empty()) diag.push_back(col.back());
        if (col.size() < 2) break;
    }
    return diag;
}

}  // namespace bmlab::quad
