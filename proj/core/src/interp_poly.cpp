#include "ellkern/interp_poly.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ellkern {

namespace {

// distinct signed permutations of mu padded to n entries
std::set<std::vector<long>> signed_orbit(const Partition& mu, int n) {
    std::vector<long> base(static_cast<size_t>(n), 0);
    for (size_t i = 0; i < mu.length(); ++i) base[i] = mu[i];
    std::sort(base.begin(), base.end());
    std::set<std::vector<long>> orbit;
    do {
        // all sign choices on nonzero entries
        std::vector<size_t> nz;
        for (size_t i = 0; i < base.size(); ++i)
            if (base[i] != 0) nz.push_back(i);
        for (long mask = 0; mask < (1L << nz.size()); ++mask) {
            std::vector<long> v(base);
            for (size_t b = 0; b < nz.size(); ++b)
                if ((mask >> b) & 1) v[nz[b]] = -v[nz[b]];
            orbit.insert(v);
        }
    } while (std::next_permutation(base.begin(), base.end()));
    return orbit;
}

std::vector<std::vector<Rational>> solve_gauss(std::vector<std::vector<Rational>> A) {
    // returns reduced row echelon of [A | rhs] (rhs = last column)
    size_t rows = A.size(), cols = A[0].size();
    size_t r = 0;
    for (size_t c = 0; c + 1 < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && A[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]);
        Rational pv = A[r][c];
        for (size_t j = c; j < cols; ++j) A[r][j] /= pv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rational f = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
        }
        ++r;
    }
    return A;
}

} // namespace

Rational bc_monomial(const Partition& mu, int n, const std::vector<Rational>& z) {
    Rational total(0);
    for (const auto& v : signed_orbit(mu, n)) {
        Rational term(1);
        for (int i = 0; i < n; ++i) term *= rat_pow(z[static_cast<size_t>(i)], v[static_cast<size_t>(i)]);
        total += term;
    }
    return total;
}

std::vector<Rational> interp_grid(const Partition& mu, int n, const Rational& sq,
                                  const Rational& st, const Rational& s) {
    std::vector<Rational> z(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i)
        z[static_cast<size_t>(i - 1)] =
            rat_pow(sq * sq, mu[static_cast<size_t>(i - 1)]) * rat_pow(st * st, n - i) * s;
    return z;
}

InterpPoly okounkov_poly(const Partition& lam, int n, const Rational& sq, const Rational& st,
                         const Rational& s) {
    if (static_cast<int>(lam.length()) > n)
        throw std::invalid_argument("okounkov_poly: partition longer than n");
    const long d = lam.weight();
    std::vector<Partition> basis = partitions_up_to(d, static_cast<size_t>(n));
    // rows: vanishing at <mu> for mu != lam, |mu| <= d; then monic row
    std::vector<std::vector<Rational>> A;
    for (const Partition& mu : basis) {
        if (mu == lam) continue;
        std::vector<Rational> row;
        auto z = interp_grid(mu, n, sq, st, s);
        for (const Partition& nu : basis) row.push_back(bc_monomial(nu, n, z));
        row.push_back(Rational(0));
        A.push_back(std::move(row));
    }
    {
        std::vector<Rational> row;
        for (const Partition& nu : basis) row.push_back(nu == lam ? Rational(1) : Rational(0));
        row.push_back(Rational(1));
        A.push_back(std::move(row));
    }
    auto R = solve_gauss(std::move(A));
    // read off the unique solution
    InterpPoly P{lam, n, sq, st, s, {}};
    for (size_t i = 0; i < R.size(); ++i) {
        size_t lead = 0;
        while (lead < basis.size() && R[i][lead] == 0) ++lead;
        if (lead == basis.size()) {
            if (R[i].back() != 0)
                throw std::runtime_error("okounkov_poly: inconsistent vanishing system");
            continue;
        }
        P.coeffs[basis[lead]] = R[i].back();
    }
    return P;
}

Rational interp_eval(const InterpPoly& P, const std::vector<Rational>& z) {
    Rational total(0);
    for (const auto& [mu, c] : P.coeffs) total += c * bc_monomial(mu, P.n, z);
    return total;
}

bool okounkov_vanishing_grid(const InterpPoly& P, long max_weight) {
    for (const Partition& mu : partitions_up_to(max_weight, static_cast<size_t>(P.n))) {
        Rational v = interp_eval(P, interp_grid(mu, P.n, P.sq, P.st, P.s));
        bool contains = mu.contains(P.lam);
        if (contains && v == 0) return false;
        if (!contains && v != 0) return false;
    }
    return true;
}

namespace {

// D_q(v, u/v; t) at p = 0, acting on an exact function of n variables
Rational dq_apply(const std::function<Rational(const std::vector<Rational>&)>& f, int n,
                  const std::vector<Rational>& z, const Rational& v, const Rational& u,
                  const Rational& sq, const Rational& st) {
    const Rational q = sq * sq, t = st * st;
    Rational total(0);
    for (long mask = 0; mask < (1L << n); ++mask) {
        Rational w(1);
        auto zs = [&](int i) {
            return (mask >> i) & 1 ? z[static_cast<size_t>(i)]
                                   : Rational(Rational(1) / z[static_cast<size_t>(i)]);
        };
        for (int i = 0; i < n; ++i) {
            w *= (1 - v * zs(i)) * (1 - (u / v) * zs(i));
            w /= 1 - zs(i) * zs(i);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) w *= (1 - t * zs(i) * zs(j)) / (1 - zs(i) * zs(j));
        std::vector<Rational> shifted(z);
        for (int i = 0; i < n; ++i)
            shifted[static_cast<size_t>(i)] = (mask >> i) & 1
                                                  ? Rational(z[static_cast<size_t>(i)] * sq)
                                                  : Rational(z[static_cast<size_t>(i)] / sq);
        total += w * f(shifted);
    }
    return total;
}

struct Expansion {
    // coefficient of P-bar*_mu as a Laurent polynomial in v: exponent -> coeff
    std::map<Partition, std::map<long, Rational>> table;
};

Expansion expand_dq(const Partition& lam, int n, const Rational& sq, const Rational& st,
                    const Rational& s, const Rational& u) {
    InterpPoly P = okounkov_poly(lam, n, sq, st, s);
    const Rational news = sq * s;
    const long d = lam.weight();
    std::vector<Partition> basis = partitions_up_to(d, static_cast<size_t>(n));
    std::map<Partition, InterpPoly> target;
    for (const Partition& mu : basis) target.emplace(mu, okounkov_poly(mu, n, sq, st, news));

    const long ell = static_cast<long>(lam.length());
    // sample enough v values to interpolate a Laurent polynomial of degree ell
    std::vector<Rational> vs;
    for (long k = 0; k < 2 * ell + 1; ++k) vs.push_back(Rational(2 * k + 3, 2 * k + 5));

    std::map<Partition, std::vector<Rational>> samples;
    for (const Rational& v : vs) {
        // expand D f at the grid by triangular solve against the new basis
        std::map<Partition, Rational> c;
        auto f = [&](const std::vector<Rational>& z) { return interp_eval(P, z); };
        for (const Partition& kap : basis) {
            auto z = interp_grid(kap, n, sq, st, news);
            Rational val = dq_apply(f, n, z, v, u, sq, st);
            for (const Partition& mu : basis) {
                if (mu == kap) continue;
                auto it = c.find(mu);
                if (it != c.end()) val -= it->second * interp_eval(target.at(mu), z);
            }
            Rational pk = interp_eval(target.at(kap), z);
            if (pk == 0) throw std::runtime_error("expand_dq: degenerate basis grid");
            c[kap] = val / pk;
        }
        for (const Partition& mu : basis) samples[mu].push_back(c.count(mu) ? c[mu] : Rational(0));
    }
    // exact Laurent interpolation in v with exponents in [-ell, ell]
    Expansion out;
    const size_t m = vs.size();
    for (const Partition& mu : basis) {
        std::vector<std::vector<Rational>> A;
        for (size_t i = 0; i < m; ++i) {
            std::vector<Rational> row;
            for (long e = -ell; e <= ell; ++e) row.push_back(rat_pow(vs[i], e));
            row.push_back(samples[mu][i]);
            A.push_back(std::move(row));
        }
        auto R = solve_gauss(std::move(A));
        std::map<long, Rational> laurent;
        for (size_t i = 0; i < R.size(); ++i) {
            size_t lead = 0;
            while (lead < static_cast<size_t>(2 * ell + 1) && R[i][lead] == 0) ++lead;
            if (lead == static_cast<size_t>(2 * ell + 1)) continue;
            long e = static_cast<long>(lead) - ell;
            if (R[i].back() != 0) laurent[e] = R[i].back();
        }
        if (!laurent.empty()) out.table[mu] = std::move(laurent);
    }
    return out;
}

} // namespace

AppendixReport check_appendix(AppendixKind kind, const Partition& lam, int n, const Rational& sq,
                              const Rational& st, const Rational& s, const Rational& u) {
    if (kind == AppendixKind::horizontal_strip) {
        // conjugate-dual form: vertical strips for lam' under (q,t) -> (t,q)
        Partition lamc = lam.conjugate();
        int nc = std::max(n, static_cast<int>(lamc.length()));
        Expansion e = expand_dq(lamc, nc, st, sq, s, u);
        for (const auto& [muc, laurent] : e.table) {
            Partition mu = muc.conjugate();
            if (!horizontal_strip(lam, mu))
                return {false, "support outside horizontal strips at mu = " + mu.to_string()};
        }
        return {true, ""};
    }
    Expansion e = expand_dq(lam, n, sq, st, s, u);
    const long ell = static_cast<long>(lam.length());
    if (kind == AppendixKind::vertical_strip) {
        for (const auto& [mu, laurent] : e.table)
            if (!vertical_strip(lam, mu))
                return {false, "support outside vertical strips at mu = " + mu.to_string()};
        return {true, ""};
    }
    // v_degree: Laurent degree <= l(lam), and the top coefficient is supported
    // on mu = lam - 1^{l(lam)}
    Partition corner;
    {
        std::vector<long> parts(lam.parts());
        for (long& pp : parts) pp -= 1;
        corner = Partition(parts);
    }
    bool corner_seen = false;
    for (const auto& [mu, laurent] : e.table) {
        long deg = 0;
        for (const auto& [expo, c] : laurent) deg = std::max(deg, std::labs(expo));
        if (deg > ell) return {false, "v-degree " + std::to_string(deg) + " beyond l(lam)"};
        if (laurent.count(ell) || laurent.count(-ell)) {
            if (mu != corner)
                return {false, "leading v-coefficient supported off the corner at " + mu.to_string()};
            corner_seen = true;
        }
    }
    if (!corner_seen && ell > 0) return {false, "leading v-coefficient missing"};
    return {true, ""};
}

} // namespace ellkern
