#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "pentagon/field.hpp"
#include "pentagon/report.hpp"

namespace pentagon {

using Index = std::int64_t;

/// A named tensor factor. Labels are documentation; shape checks use dims.
struct Space {
    std::string label;
    Index dim = 0;

    Space() = default;
    Space(std::string l, Index d) : label(std::move(l)), dim(d) {
        if (d < 1) throw UsageError("space '" + label + "' must have dim >= 1");
    }
    bool operator==(const Space&) const = default;
};

using Legs = std::vector<Space>;

inline Index total_dim(const Legs& legs) {
    Index d = 1;
    for (const auto& s : legs) d *= s.dim;
    return d;
}

/// Flat index <-> per-leg digits under the lexicographic convention
/// (leftmost leg most significant).
inline std::vector<Index> leg_digits(const Legs& legs, Index flat) {
    std::vector<Index> digits(legs.size());
    for (std::size_t k = legs.size(); k-- > 0;) {
        digits[k] = flat % legs[k].dim;
        flat /= legs[k].dim;
    }
    return digits;
}

inline Index leg_flat(const Legs& legs, const std::vector<Index>& digits) {
    Index flat = 0;
    for (std::size_t k = 0; k < legs.size(); ++k) flat = flat * legs[k].dim + digits[k];
    return flat;
}

/// Dense linear map between ordered tensor products of spaces.
/// Rows are indexed by the codomain legs, columns by the domain legs,
/// both flattened lexicographically with the leftmost leg most significant.
template <class K>
class LegMap {
public:
    LegMap() = default;

    LegMap(FieldSpec field, Legs codomain, Legs domain)
        : field_(field), cod_(std::move(codomain)), dom_(std::move(domain)),
          rows_(total_dim(cod_)), cols_(total_dim(dom_)) {
        if (rows_ * cols_ > Index(1) << 22)
            throw UsageError("refusing to materialize a " + std::to_string(rows_) + "x" +
                             std::to_string(cols_) + " dense matrix");
        m_.assign(static_cast<std::size_t>(rows_ * cols_), k_zero<K>(field_));
    }

    static LegMap identity(FieldSpec field, Legs legs) {
        LegMap r(field, legs, legs);
        for (Index i = 0; i < r.rows_; ++i) r.at(i, i) = k_one<K>(field);
        return r;
    }

    static LegMap build(FieldSpec field, Legs codomain, Legs domain,
                        const std::function<K(Index, Index)>& entry) {
        LegMap r(field, std::move(codomain), std::move(domain));
        for (Index i = 0; i < r.rows_; ++i)
            for (Index j = 0; j < r.cols_; ++j) r.at(i, j) = entry(i, j);
        return r;
    }

    const FieldSpec& field() const { return field_; }
    const Legs& codomain() const { return cod_; }
    const Legs& domain() const { return dom_; }
    Index rows() const { return rows_; }
    Index cols() const { return cols_; }

    const K& at(Index r, Index c) const { return m_[static_cast<std::size_t>(r * cols_ + c)]; }
    K& at(Index r, Index c) { return m_[static_cast<std::size_t>(r * cols_ + c)]; }

    bool square() const { return rows_ == cols_; }

    Index nonzero_count() const {
        Index n = 0;
        for (const auto& x : m_)
            if (!k_is_zero(x)) ++n;
        return n;
    }
    bool is_zero() const { return nonzero_count() == 0; }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (Index i = 0; i < rows_; ++i)
            for (Index j = 0; j < cols_; ++j) {
                const K want = i == j ? k_one<K>(field_) : k_zero<K>(field_);
                if (!(at(i, j) == want)) return false;
            }
        return true;
    }

    /// Same matrix, reinterpreted on new leg lists (total dims must agree).
    LegMap reshaped(Legs codomain, Legs domain) const {
        if (total_dim(codomain) != rows_ || total_dim(domain) != cols_)
            throw UsageError("reshape changes total dimension");
        LegMap r = *this;
        r.cod_ = std::move(codomain);
        r.dom_ = std::move(domain);
        return r;
    }

    friend LegMap operator+(const LegMap& a, const LegMap& b) {
        a.check_same_shape(b);
        LegMap r = a;
        for (std::size_t i = 0; i < r.m_.size(); ++i) r.m_[i] = r.m_[i] + b.m_[i];
        return r;
    }
    friend LegMap operator-(const LegMap& a, const LegMap& b) {
        a.check_same_shape(b);
        LegMap r = a;
        for (std::size_t i = 0; i < r.m_.size(); ++i) r.m_[i] = r.m_[i] - b.m_[i];
        return r;
    }

    LegMap scaled(const K& c) const {
        LegMap r = *this;
        for (auto& x : r.m_) x = x * c;
        return r;
    }

    /// Composition a after b. Skips zero entries, so permutation-like factors
    /// compose in near-linear time.
    friend LegMap operator*(const LegMap& a, const LegMap& b) {
        if (a.cols_ != b.rows_) throw UsageError("composition shape mismatch");
        if (a.field_ != b.field_) throw UsageError("composition field mismatch");
        check_leg_dims(a.dom_, b.cod_);
        LegMap r(a.field_, a.cod_, b.dom_);
        for (Index i = 0; i < a.rows_; ++i)
            for (Index k = 0; k < a.cols_; ++k) {
                const K& aik = a.at(i, k);
                if (k_is_zero(aik)) continue;
                for (Index j = 0; j < b.cols_; ++j) {
                    const K& bkj = b.at(k, j);
                    if (k_is_zero(bkj)) continue;
                    r.at(i, j) = r.at(i, j) + aik * bkj;
                }
            }
        return r;
    }

    /// Entrywise equality on matching shapes; leg labels are ignored.
    friend bool operator==(const LegMap& a, const LegMap& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        return a.m_ == b.m_;
    }

    LegMap transposed() const {
        LegMap r(field_, dom_, cod_);
        for (Index i = 0; i < rows_; ++i)
            for (Index j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    std::vector<K> apply(const std::vector<K>& v) const {
        if (static_cast<Index>(v.size()) != cols_) throw UsageError("apply shape mismatch");
        std::vector<K> w(static_cast<std::size_t>(rows_), k_zero<K>(field_));
        for (Index i = 0; i < rows_; ++i)
            for (Index j = 0; j < cols_; ++j)
                if (!k_is_zero(at(i, j))) w[i] = w[i] + at(i, j) * v[j];
        return w;
    }

    static void check_leg_dims(const Legs& a, const Legs& b) {
        if (a.size() != b.size()) throw UsageError("leg count mismatch");
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].dim != b[i].dim) throw UsageError("leg dim mismatch at position " + std::to_string(i));
    }

private:
    void check_same_shape(const LegMap& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_)
            throw UsageError("shape or field mismatch");
    }

    FieldSpec field_;
    Legs cod_, dom_;
    Index rows_ = 0, cols_ = 0;
    std::vector<K> m_;
};

// --- leg calculus --------------------------------------------------------------

/// Kronecker product: domain/codomain legs concatenate, entries multiply.
template <class K>
LegMap<K> kron(const LegMap<K>& a, const LegMap<K>& b) {
    if (a.field() != b.field()) throw UsageError("kron field mismatch");
    Legs cod = a.codomain(), dom = a.domain();
    cod.insert(cod.end(), b.codomain().begin(), b.codomain().end());
    dom.insert(dom.end(), b.domain().begin(), b.domain().end());
    LegMap<K> r(a.field(), std::move(cod), std::move(dom));
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) {
            if (k_is_zero(a.at(i, j))) continue;
            for (Index k = 0; k < b.rows(); ++k)
                for (Index l = 0; l < b.cols(); ++l) {
                    if (k_is_zero(b.at(k, l))) continue;
                    r.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
                }
        }
    return r;
}

/// Permutation operator sending input leg k to output position perm[k] (0-based).
template <class K>
LegMap<K> permute_legs(FieldSpec field, const std::vector<std::size_t>& perm, const Legs& legs) {
    if (perm.size() != legs.size()) throw UsageError("permutation length mismatch");
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t p : perm) {
        if (p >= perm.size() || seen[p]) throw UsageError("not a permutation");
        seen[p] = true;
    }
    Legs cod(legs.size(), Space());
    for (std::size_t k = 0; k < legs.size(); ++k) cod[perm[k]] = legs[k];
    LegMap<K> r(field, cod, legs);
    const Index n = r.cols();
    for (Index j = 0; j < n; ++j) {
        auto digits = leg_digits(legs, j);
        std::vector<Index> out(digits.size());
        for (std::size_t k = 0; k < digits.size(); ++k) out[perm[k]] = digits[k];
        r.at(leg_flat(cod, out), j) = k_one<K>(field);
    }
    return r;
}

/// The flip t on a two-leg product.
template <class K>
LegMap<K> flip_map(FieldSpec field, const Space& a, const Space& b) {
    return permute_legs<K>(field, {1, 0}, {a, b});
}

/// X acting on the legs of `ambient` selected by `positions` (strictly
/// increasing, 0-based), identity elsewhere. X may change the type of the
/// selected legs; the codomain ambient carries X.codomain at those positions.
template <class K>
LegMap<K> embed_legs(const LegMap<K>& x, const std::vector<std::size_t>& positions,
                     const Legs& ambient) {
    const std::size_t k = positions.size();
    if (x.domain().size() != k || x.codomain().size() != k)
        throw UsageError("embed_legs needs one position per leg of the embedded map");
    for (std::size_t i = 0; i + 1 < k; ++i)
        if (positions[i] >= positions[i + 1]) throw UsageError("positions must be strictly increasing");
    if (k > ambient.size() || (k && positions.back() >= ambient.size()))
        throw UsageError("position out of range");
    for (std::size_t i = 0; i < k; ++i)
        if (ambient[positions[i]].dim != x.domain()[i].dim)
            throw UsageError("leg-type mismatch at position " + std::to_string(positions[i]));

    Legs cod = ambient;
    for (std::size_t i = 0; i < k; ++i) cod[positions[i]] = x.codomain()[i];

    LegMap<K> r(x.field(), cod, ambient);
    std::vector<bool> selected(ambient.size(), false);
    for (std::size_t p : positions) selected[p] = true;

    for (Index j = 0; j < r.cols(); ++j) {
        auto digits = leg_digits(ambient, j);
        std::vector<Index> sub(k);
        for (std::size_t i = 0; i < k; ++i) sub[i] = digits[positions[i]];
        const Index xcol = leg_flat(x.domain(), sub);
        for (Index xrow = 0; xrow < x.rows(); ++xrow) {
            if (k_is_zero(x.at(xrow, xcol))) continue;
            auto out = digits;
            auto rsub = leg_digits(x.codomain(), xrow);
            for (std::size_t i = 0; i < k; ++i) out[positions[i]] = rsub[i];
            r.at(leg_flat(cod, out), j) = x.at(xrow, xcol);
        }
    }
    return r;
}

/// permute_legs(perm, a.codomain()) * a, computed by reindexing rows so the
/// permutation matrix is never materialized.
template <class K>
LegMap<K> permute_output_legs(const LegMap<K>& a, const std::vector<std::size_t>& perm) {
    if (perm.size() != a.codomain().size()) throw UsageError("permutation length mismatch");
    Legs cod(a.codomain().size(), Space());
    for (std::size_t k = 0; k < perm.size(); ++k) cod[perm[k]] = a.codomain()[k];
    LegMap<K> r(a.field(), cod, a.domain());
    for (Index i = 0; i < a.rows(); ++i) {
        auto digits = leg_digits(a.codomain(), i);
        std::vector<Index> out(digits.size());
        for (std::size_t k = 0; k < digits.size(); ++k) out[perm[k]] = digits[k];
        const Index r2 = leg_flat(cod, out);
        for (Index j = 0; j < a.cols(); ++j)
            if (!k_is_zero(a.at(i, j))) r.at(r2, j) = a.at(i, j);
    }
    return r;
}

/// Partial evaluation against a matrix-unit pair: fix codomain leg
/// `out_leg` at index i and domain leg `in_leg` at index j (all 0-based);
/// the result acts on the remaining legs.
template <class K>
LegMap<K> slice(const LegMap<K>& t, std::size_t out_leg, std::size_t in_leg, Index i, Index j) {
    if (out_leg >= t.codomain().size() || in_leg >= t.domain().size())
        throw UsageError("slice leg out of range");
    if (i < 0 || i >= t.codomain()[out_leg].dim || j < 0 || j >= t.domain()[in_leg].dim)
        throw UsageError("slice index out of range");
    Legs cod, dom;
    for (std::size_t l = 0; l < t.codomain().size(); ++l)
        if (l != out_leg) cod.push_back(t.codomain()[l]);
    for (std::size_t l = 0; l < t.domain().size(); ++l)
        if (l != in_leg) dom.push_back(t.domain()[l]);
    LegMap<K> r(t.field(), cod, dom);
    for (Index rr = 0; rr < r.rows(); ++rr) {
        auto cd = leg_digits(cod, rr);
        std::vector<Index> full_r(cd.size() + 1);
        for (std::size_t l = 0, s = 0; l < t.codomain().size(); ++l)
            full_r[l] = (l == out_leg) ? i : cd[s++];
        const Index trow = leg_flat(t.codomain(), full_r);
        for (Index cc = 0; cc < r.cols(); ++cc) {
            auto dd = leg_digits(dom, cc);
            std::vector<Index> full_c(dd.size() + 1);
            for (std::size_t l = 0, s = 0; l < t.domain().size(); ++l)
                full_c[l] = (l == in_leg) ? j : dd[s++];
            r.at(rr, cc) = t.at(trow, leg_flat(t.domain(), full_c));
        }
    }
    return r;
}

// --- big residuals, evaluated columnwise ---------------------------------------

template <class K>
using SparseVec = std::map<Index, K>;

/// One operator application inside a chain: `op` on `positions` of the
/// current ambient.
template <class K>
struct LegStep {
    const LegMap<K>* op;
    std::vector<std::size_t> positions;
};

template <class K>
SparseVec<K> apply_step(const LegStep<K>& step, const Legs& ambient_in, Legs& ambient_out,
                        const SparseVec<K>& v) {
    const LegMap<K>& x = *step.op;
    const std::size_t k = step.positions.size();
    for (std::size_t i = 0; i < k; ++i)
        if (ambient_in[step.positions[i]].dim != x.domain()[i].dim)
            throw UsageError("chain leg mismatch");
    ambient_out = ambient_in;
    for (std::size_t i = 0; i < k; ++i) ambient_out[step.positions[i]] = x.codomain()[i];

    SparseVec<K> w;
    for (const auto& [flat, val] : v) {
        auto digits = leg_digits(ambient_in, flat);
        std::vector<Index> sub(k);
        for (std::size_t i = 0; i < k; ++i) sub[i] = digits[step.positions[i]];
        const Index xcol = leg_flat(x.domain(), sub);
        for (Index xrow = 0; xrow < x.rows(); ++xrow) {
            const K& e = x.at(xrow, xcol);
            if (k_is_zero(e)) continue;
            auto out = digits;
            auto rsub = leg_digits(x.codomain(), xrow);
            for (std::size_t i = 0; i < k; ++i) out[step.positions[i]] = rsub[i];
            const Index widx = leg_flat(ambient_out, out);
            auto it = w.find(widx);
            if (it == w.end())
                w.emplace(widx, e * val);
            else
                it->second = it->second + e * val;
        }
    }
    return w;
}

/// Count of nonzero entries of (L - R) where L and R are the compositions
/// of the given chains (steps applied left to right) on `domain`. Never
/// materializes the composite matrices.
template <class K>
Index chain_residual_nonzeros(const Legs& domain, const std::vector<LegStep<K>>& lhs,
                              const std::vector<LegStep<K>>& rhs, const FieldSpec& field) {
    const Index n = total_dim(domain);
    Index bad = 0;
    for (Index col = 0; col < n; ++col) {
        SparseVec<K> vl{{col, k_one<K>(field)}}, vr = vl;
        Legs amb_l = domain, amb_r = domain;
        for (const auto& s : lhs) {
            Legs next;
            vl = apply_step(s, amb_l, next, vl);
            amb_l = next;
        }
        for (const auto& s : rhs) {
            Legs next;
            vr = apply_step(s, amb_r, next, vr);
            amb_r = next;
        }
        if (total_dim(amb_l) != total_dim(amb_r)) throw UsageError("chain codomain mismatch");
        for (const auto& [i, x] : vl) {
            auto it = vr.find(i);
            if (it == vr.end() ? !k_is_zero(x) : !(x == it->second)) ++bad;
        }
        for (const auto& [i, x] : vr)
            if (!vl.count(i) && !k_is_zero(x)) ++bad;
    }
    return bad;
}

}  // namespace pentagon
