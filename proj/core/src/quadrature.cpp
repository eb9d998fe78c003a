#include "ellkern/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <thread>

namespace ellkern {

namespace {

std::atomic<int> g_threads{0}; // 0 = auto

struct dd {
    double hi = 0.0, lo = 0.0;
    void add(double x) {
        double s = hi + x;
        double bb = s - hi;
        double err = (hi - (s - bb)) + (x - bb);
        hi = s;
        lo += err;
    }
    double value() const { return hi + lo; }
};

long total_nodes(const TorusQuadrature& q) {
    long n = 1;
    for (int i = 0; i < q.dim; ++i) n *= q.points_per_dim;
    return n;
}

void node_coords(const TorusQuadrature& q, long idx, cvec& z) {
    const double tau = 2.0 * std::numbers::pi;
    for (int j = 0; j < q.dim; ++j) {
        long k = idx % q.points_per_dim;
        idx /= q.points_per_dim;
        double ang = tau * (static_cast<double>(k) + q.offset(j)) / q.points_per_dim;
        z[static_cast<size_t>(j)] = cx(std::cos(ang), std::sin(ang));
    }
}

template <class F>
void evaluate_nodes(const TorusQuadrature& q, const F& f, std::vector<cx>& vals) {
    const long n = total_nodes(q);
    vals.assign(static_cast<size_t>(n), cx(0.0));
    int nthreads = quadrature_threads();
    if (nthreads <= 1 || n < 256) {
        cvec z(static_cast<size_t>(q.dim));
        for (long i = 0; i < n; ++i) {
            node_coords(q, i, z);
            vals[static_cast<size_t>(i)] = f(z);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    const long chunk = 64;
    for (int w = 0; w < nthreads; ++w) {
        pool.emplace_back([&] {
            cvec z(static_cast<size_t>(q.dim));
            for (;;) {
                long lo = next.fetch_add(chunk);
                if (lo >= n) return;
                long hi = std::min(n, lo + chunk);
                try {
                    for (long i = lo; i < hi; ++i) {
                        node_coords(q, i, z);
                        vals[static_cast<size_t>(i)] = f(z);
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> g(err_mu);
                    if (!err) err = std::current_exception();
                    next.store(n);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

cx reduce(const std::vector<cx>& v, bool extended) {
    if (extended) {
        dd re, im;
        for (cx x : v) {
            re.add(x.real());
            im.add(x.imag());
        }
        return cx(re.value(), im.value());
    }
    return pairwise_sum(v);
}

cx integrate_once(const TorusIntegrand& f, const TorusQuadrature& q, const PrecisionConfig& cfg) {
    std::vector<cx> vals;
    evaluate_nodes(q, f, vals);
    cx s = reduce(vals, cfg.precision == working_precision::extended);
    return s / static_cast<double>(vals.size());
}

} // namespace

cx pairwise_sum(const std::vector<cx>& v) {
    // fixed tree over index ranges, independent of thread count
    std::function<cx(size_t, size_t)> rec = [&](size_t lo, size_t hi) -> cx {
        if (hi - lo <= 8) {
            cx s = 0.0;
            for (size_t i = lo; i < hi; ++i) s += v[i];
            return s;
        }
        size_t mid = lo + (hi - lo) / 2;
        return rec(lo, mid) + rec(mid, hi);
    };
    if (v.empty()) return 0.0;
    return rec(0, v.size());
}

cx torus_integrate(const TorusIntegrand& f, const TorusQuadrature& quad,
                   const PrecisionConfig& cfg) {
    cx v = integrate_once(f, quad, cfg);
    if (quad.doubling_check) {
        TorusQuadrature fine = quad;
        fine.points_per_dim *= 2;
        fine.doubling_check = false;
        cx v2 = integrate_once(f, fine, cfg);
        double scale = std::max(std::abs(v), std::abs(v2));
        if (scale > 0.0 && std::abs(v - v2) / scale > quad.doubling_tolerance)
            throw certificate_error("torus_integrate: doubling disagreement " +
                                    std::to_string(std::abs(v - v2) / scale));
        return v2;
    }
    return v;
}

double torus_integrate_abs(const TorusIntegrand& f, const TorusQuadrature& quad) {
    std::vector<cx> vals;
    evaluate_nodes(quad, f, vals);
    double s = 0.0;
    for (cx x : vals) s += std::abs(x);
    return s / static_cast<double>(vals.size());
}

cx residue_at(const std::function<cx(cx)>& g, cx w, double r, int points) {
    const double tau = 2.0 * std::numbers::pi;
    cx s = 0.0;
    for (int k = 0; k < points; ++k) {
        double ang = tau * (k + 0.5) / points;
        cx e = cx(std::cos(ang), std::sin(ang));
        s += g(w + r * e) * (r * e);
    }
    return s / static_cast<double>(points);
}

void set_quadrature_threads(int n) { g_threads.store(n); }

int quadrature_threads() {
    int n = g_threads.load();
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

} // namespace ellkern
