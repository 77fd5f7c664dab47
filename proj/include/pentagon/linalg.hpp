#pragma once

#include <optional>
#include <vector>

#include "pentagon/legmap.hpp"

namespace pentagon {

template <class K>
using Vec = std::vector<K>;

/// In-place reduced row echelon form. Deterministic: first nonzero row per
/// column, pivots normalized to 1, zero rows dropped. Returns pivot columns.
template <class K>
std::vector<Index> rref_in_place(std::vector<Vec<K>>& rows, const FieldSpec& field) {
    std::vector<Index> pivots;
    if (rows.empty()) return pivots;
    const Index ncols = static_cast<Index>(rows[0].size());
    std::size_t r = 0;
    for (Index c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && k_is_zero(rows[sel][c])) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        const K inv = field_ops<K>::inverse(rows[r][c]);
        for (Index j = c; j < ncols; ++j)
            if (!k_is_zero(rows[r][j])) rows[r][j] = rows[r][j] * inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || k_is_zero(rows[i][c])) continue;
            const K f = rows[i][c];
            for (Index j = c; j < ncols; ++j)
                if (!k_is_zero(rows[r][j])) rows[i][j] = rows[i][j] - f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r, Vec<K>());
    (void)field;
    return pivots;
}

/// Element of the dual of a space of maps, in dual-basis coordinates
/// (one coordinate per matrix entry, row-major).
template <class K>
struct Functional {
    Legs cod, dom;  // shape of the maps it evaluates
    Vec<K> coords;

    K eval(const LegMap<K>& x) const {
        if (static_cast<Index>(coords.size()) != x.rows() * x.cols())
            throw UsageError("functional shape mismatch");
        K acc = k_zero<K>(x.field());
        std::size_t k = 0;
        for (Index r = 0; r < x.rows(); ++r)
            for (Index c = 0; c < x.cols(); ++c, ++k)
                if (!k_is_zero(coords[k]) && !k_is_zero(x.at(r, c)))
                    acc = acc + coords[k] * x.at(r, c);
        return acc;
    }
};

template <class K>
Vec<K> flatten(const LegMap<K>& m) {
    Vec<K> v;
    v.reserve(static_cast<std::size_t>(m.rows() * m.cols()));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
    return v;
}

template <class K>
LegMap<K> unflatten(const Vec<K>& v, const FieldSpec& field, const Legs& cod, const Legs& dom) {
    LegMap<K> m(field, cod, dom);
    std::size_t k = 0;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) m.at(i, j) = v[k++];
    return m;
}

/// Canonical basis of the span of a family of equal-shaped maps, with the
/// bookkeeping needed to read coordinates and preimages back off.
template <class K>
struct SpanBasis {
    FieldSpec field;
    Legs cod, dom;
    std::vector<LegMap<K>> elems;    // RREF-canonical representatives
    std::vector<Index> pivots;       // pivot position (flattened) per element
    std::vector<Vec<K>> rows;        // flattened elems
    std::vector<Vec<K>> combos;      // combos[i]: elems[i] as combination of the generators

    Index dim() const { return static_cast<Index>(elems.size()); }

    /// Coordinates of x in this basis, or nullopt if x lies outside the span.
    /// Pivot columns make the candidate coordinates a direct read; the
    /// reconstruction is then verified entrywise.
    std::optional<Vec<K>> coords_of(const LegMap<K>& x) const {
        Vec<K> xv = flatten(x);
        Vec<K> c;
        c.reserve(elems.size());
        for (std::size_t i = 0; i < elems.size(); ++i) c.push_back(xv[pivots[i]]);
        Vec<K> rec(xv.size(), k_zero<K>(field));
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (k_is_zero(c[i])) continue;
            for (std::size_t j = 0; j < rec.size(); ++j)
                if (!k_is_zero(rows[i][j])) rec[j] = rec[j] + c[i] * rows[i][j];
        }
        if (rec != xv) return std::nullopt;
        return c;
    }

    bool contains(const LegMap<K>& x) const { return coords_of(x).has_value(); }

    LegMap<K> from_coords(const Vec<K>& c) const {
        LegMap<K> r(field, cod, dom);
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (!k_is_zero(c[i])) r = r + elems[i].scaled(c[i]);
        return r;
    }
};

/// RREF basis of the span of `maps` (all of one shape), tracking how each
/// basis element combines the generators.
template <class K>
SpanBasis<K> image_basis(const std::vector<LegMap<K>>& maps) {
    if (maps.empty()) throw UsageError("image_basis of empty family");
    const FieldSpec field = maps[0].field();
    const Index n = maps[0].rows() * maps[0].cols();
    const std::size_t g = maps.size();
    std::vector<Vec<K>> rows;
    rows.reserve(g);
    for (std::size_t idx = 0; idx < g; ++idx) {
        const auto& m = maps[idx];
        if (m.rows() != maps[0].rows() || m.cols() != maps[0].cols() || m.field() != field)
            throw UsageError("image_basis shape mismatch");
        Vec<K> row = flatten(m);
        // augment with generator coordinates
        for (std::size_t j = 0; j < g; ++j)
            row.push_back(k_int<K>(j == idx ? 1 : 0, field));
        rows.push_back(std::move(row));
    }
    // eliminate on the first n columns only
    std::vector<Index> pivots;
    std::size_t r = 0;
    for (Index c = 0; c < n && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && k_is_zero(rows[sel][c])) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        const K inv = field_ops<K>::inverse(rows[r][c]);
        for (std::size_t j = 0; j < rows[r].size(); ++j)
            if (!k_is_zero(rows[r][j])) rows[r][j] = rows[r][j] * inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || k_is_zero(rows[i][c])) continue;
            const K f = rows[i][c];
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                if (!k_is_zero(rows[r][j])) rows[i][j] = rows[i][j] - f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    SpanBasis<K> b;
    b.field = field;
    b.cod = maps[0].codomain();
    b.dom = maps[0].domain();
    b.pivots = pivots;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        Vec<K> row(rows[i].begin(), rows[i].begin() + n);
        Vec<K> combo(rows[i].begin() + n, rows[i].end());
        b.elems.push_back(unflatten(row, field, b.cod, b.dom));
        b.rows.push_back(std::move(row));
        b.combos.push_back(std::move(combo));
    }
    return b;
}

/// Exact null space of A (column vectors v with A v = 0), RREF-canonical.
template <class K>
std::vector<Vec<K>> kernel_basis(const LegMap<K>& a) {
    const FieldSpec field = a.field();
    std::vector<Vec<K>> rows;
    rows.reserve(static_cast<std::size_t>(a.rows()));
    for (Index i = 0; i < a.rows(); ++i) {
        Vec<K> row;
        row.reserve(static_cast<std::size_t>(a.cols()));
        for (Index j = 0; j < a.cols(); ++j) row.push_back(a.at(i, j));
        rows.push_back(std::move(row));
    }
    std::vector<Index> pivots = rref_in_place(rows, field);
    std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
    for (Index p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<Vec<K>> basis;
    for (Index f = 0; f < a.cols(); ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        Vec<K> v(static_cast<std::size_t>(a.cols()), k_zero<K>(field));
        v[static_cast<std::size_t>(f)] = k_one<K>(field);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<std::size_t>(pivots[r])] = k_zero<K>(field) - rows[r][f];
        basis.push_back(std::move(v));
    }
    rref_in_place(basis, field);  // canonical representatives
    return basis;
}

/// Any exact solution of A x = b, or nullopt when the system is inconsistent.
template <class K>
std::optional<Vec<K>> solve_linear(const LegMap<K>& a, const Vec<K>& b) {
    if (static_cast<Index>(b.size()) != a.rows()) throw UsageError("solve_linear shape mismatch");
    const FieldSpec field = a.field();
    std::vector<Vec<K>> rows;
    for (Index i = 0; i < a.rows(); ++i) {
        Vec<K> row;
        row.reserve(static_cast<std::size_t>(a.cols()) + 1);
        for (Index j = 0; j < a.cols(); ++j) row.push_back(a.at(i, j));
        row.push_back(b[static_cast<std::size_t>(i)]);
        rows.push_back(std::move(row));
    }
    std::vector<Index> pivots = rref_in_place(rows, field);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    Vec<K> x(static_cast<std::size_t>(a.cols()), k_zero<K>(field));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[static_cast<std::size_t>(pivots[r])] = rows[r][static_cast<std::size_t>(a.cols())];
    return x;
}

template <class K>
Index rank(const LegMap<K>& a) {
    std::vector<Vec<K>> rows;
    for (Index i = 0; i < a.rows(); ++i) {
        Vec<K> row;
        for (Index j = 0; j < a.cols(); ++j) row.push_back(a.at(i, j));
        rows.push_back(std::move(row));
    }
    return static_cast<Index>(rref_in_place(rows, a.field()).size());
}

template <class K>
bool is_invertible(const LegMap<K>& a) {
    return a.square() && rank(a) == a.rows();
}

/// Exact inverse; the result maps a.codomain() back to a.domain().
template <class K>
LegMap<K> inverse(const LegMap<K>& a) {
    if (!a.square()) throw MathError("Singular", "inverse of a non-square map");
    const FieldSpec field = a.field();
    const Index n = a.rows();
    std::vector<Vec<K>> rows;
    for (Index i = 0; i < n; ++i) {
        Vec<K> row;
        row.reserve(static_cast<std::size_t>(2 * n));
        for (Index j = 0; j < n; ++j) row.push_back(a.at(i, j));
        for (Index j = 0; j < n; ++j) row.push_back(k_int<K>(i == j ? 1 : 0, field));
        rows.push_back(std::move(row));
    }
    std::vector<Index> pivots = rref_in_place(rows, field);
    if (static_cast<Index>(pivots.size()) != n || pivots.back() != n - 1)
        throw MathError("Singular", "map is not invertible");
    LegMap<K> r(field, a.domain(), a.codomain());
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) r.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
    return r;
}

// --- incremental echelon form (Krylov dependence tests) --------------------------

/// Row-echelon accumulator over sparse additions; detects when a new vector
/// is dependent and reports the combination over previously added vectors.
template <class K>
class EchelonTracker {
public:
    EchelonTracker(Index ncols, FieldSpec field) : n_(ncols), field_(field) {}

    Index size() const { return static_cast<Index>(rows_.size()); }

    /// Adds v (the (count)-th vector). If v is dependent on the previous
    /// additions, returns the coefficients expressing it and leaves the
    /// tracker unchanged.
    std::optional<Vec<K>> add(Vec<K> v) {
        Vec<K> combo(count_, k_zero<K>(field_));
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const K f = v[static_cast<std::size_t>(pivots_[r])];
            if (k_is_zero(f)) continue;
            for (Index j = 0; j < n_; ++j)
                if (!k_is_zero(rows_[r][static_cast<std::size_t>(j)]))
                    v[static_cast<std::size_t>(j)] =
                        v[static_cast<std::size_t>(j)] - f * rows_[r][static_cast<std::size_t>(j)];
            for (std::size_t j = 0; j < combos_[r].size(); ++j)
                if (!k_is_zero(combos_[r][j])) combo[j] = combo[j] + f * combos_[r][j];
        }
        Index pivot = -1;
        for (Index j = 0; j < n_; ++j)
            if (!k_is_zero(v[static_cast<std::size_t>(j)])) { pivot = j; break; }
        if (pivot < 0) {
            ++count_;  // dependent; still counts as an added vector
            return combo;
        }
        const K inv = field_ops<K>::inverse(v[static_cast<std::size_t>(pivot)]);
        for (Index j = pivot; j < n_; ++j)
            if (!k_is_zero(v[static_cast<std::size_t>(j)]))
                v[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j)] * inv;
        // stored row = inv * (input_new - sum combo_j input_j)
        for (auto& c : combo) c = k_zero<K>(field_) - c * inv;
        combo.push_back(inv);
        rows_.push_back(std::move(v));
        combos_.push_back(std::move(combo));
        pivots_.push_back(pivot);
        ++count_;
        return std::nullopt;
    }

private:
    Index n_;
    FieldSpec field_;
    std::size_t count_ = 0;
    std::vector<Vec<K>> rows_;
    std::vector<Vec<K>> combos_;
    std::vector<Index> pivots_;
};

// --- polynomials over K (ascending coefficients) ---------------------------------

template <class K>
void poly_trim(Vec<K>& p) {
    while (!p.empty() && k_is_zero(p.back())) p.pop_back();
}

template <class K>
Vec<K> poly_mul(const Vec<K>& a, const Vec<K>& b, const FieldSpec& f) {
    if (a.empty() || b.empty()) return {};
    Vec<K> r(a.size() + b.size() - 1, k_zero<K>(f));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (k_is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!k_is_zero(b[j])) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

/// Quotient and remainder of a by b (b nonzero).
template <class K>
std::pair<Vec<K>, Vec<K>> poly_divmod(Vec<K> a, const Vec<K>& b, const FieldSpec& f) {
    poly_trim(a);
    Vec<K> q;
    if (a.size() < b.size()) return {q, a};
    q.assign(a.size() - b.size() + 1, k_zero<K>(f));
    const K lead_inv = field_ops<K>::inverse(b.back());
    for (std::size_t i = a.size() - 1; i + 1 >= b.size(); --i) {
        const K c = a[i] * lead_inv;
        if (!k_is_zero(c)) {
            const std::size_t off = i - b.size() + 1;
            q[off] = c;
            for (std::size_t j = 0; j < b.size(); ++j) a[off + j] = a[off + j] - c * b[j];
        }
        if (i + 1 == b.size()) break;
    }
    poly_trim(a);
    return {q, a};
}

template <class K>
Vec<K> poly_monic(Vec<K> p, const FieldSpec& f) {
    poly_trim(p);
    if (p.empty()) return p;
    const K inv = field_ops<K>::inverse(p.back());
    for (auto& c : p) c = c * inv;
    (void)f;
    return p;
}

template <class K>
Vec<K> poly_gcd(Vec<K> a, Vec<K> b, const FieldSpec& f) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        auto [q, r] = poly_divmod(a, b, f);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(std::move(a), f);
}

template <class K>
Vec<K> poly_lcm(const Vec<K>& a, const Vec<K>& b, const FieldSpec& f) {
    if (a.empty()) return poly_monic(b, f);
    if (b.empty()) return poly_monic(a, f);
    Vec<K> g = poly_gcd(a, b, f);
    auto [q, r] = poly_divmod(poly_mul(a, b, f), g, f);
    if (!r.empty()) throw MathError("Internal", "poly lcm division not exact");
    return poly_monic(std::move(q), f);
}

/// Horner evaluation of p at the square map A.
template <class K>
LegMap<K> poly_eval(const Vec<K>& p, const LegMap<K>& a) {
    const FieldSpec f = a.field();
    LegMap<K> id = LegMap<K>::identity(f, a.domain());
    LegMap<K> acc(f, a.codomain(), a.domain());
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = a * acc;
        if (!k_is_zero(p[i])) acc = acc + id.scaled(p[i]);
        if (i == 0) break;
    }
    return acc;
}

/// Monic minimal polynomial of a square map, by Krylov iteration per basis
/// vector with an early skip for vectors already annihilated.
template <class K>
Vec<K> minimal_poly(const LegMap<K>& a) {
    if (!a.square()) throw UsageError("minimal_poly of a non-square map");
    const FieldSpec field = a.field();
    const Index n = a.rows();
    Vec<K> acc{k_one<K>(field)};  // polynomial 1

    auto apply_sparse = [&](const SparseVec<K>& v) {
        SparseVec<K> w;
        for (const auto& [j, x] : v)
            for (Index i = 0; i < n; ++i) {
                const K& e = a.at(i, j);
                if (k_is_zero(e)) continue;
                auto it = w.find(i);
                if (it == w.end())
                    w.emplace(i, e * x);
                else
                    it->second = it->second + e * x;
            }
        for (auto it = w.begin(); it != w.end();)
            it = k_is_zero(it->second) ? w.erase(it) : std::next(it);
        return w;
    };

    for (Index s = 0; s < n; ++s) {
        if (static_cast<Index>(acc.size()) == n + 1) break;  // cannot grow past degree n
        // skip when acc(A) already kills e_s
        SparseVec<K> h;
        for (std::size_t i = acc.size(); i-- > 0;) {
            h = apply_sparse(h);
            if (!k_is_zero(acc[i])) {
                auto it = h.find(s);
                if (it == h.end())
                    h.emplace(s, acc[i]);
                else {
                    it->second = it->second + acc[i];
                    if (k_is_zero(it->second)) h.erase(it);
                }
            }
            if (i == 0) break;
        }
        if (h.empty()) continue;

        EchelonTracker<K> tracker(n, field);
        Vec<K> v(static_cast<std::size_t>(n), k_zero<K>(field));
        v[static_cast<std::size_t>(s)] = k_one<K>(field);
        Vec<K> cur = v;
        std::optional<Vec<K>> dep;
        while (!(dep = tracker.add(cur))) cur = a.apply(cur);
        // cur = sum dep_j A^j e_s, so local annihilator is t^k - sum dep_j t^j
        Vec<K> local(dep->size() + 1, k_zero<K>(field));
        for (std::size_t j = 0; j < dep->size(); ++j) local[j] = k_zero<K>(field) - (*dep)[j];
        local.back() = k_one<K>(field);
        acc = poly_lcm(acc, local, field);
    }
    return acc;
}

}  // namespace pentagon
