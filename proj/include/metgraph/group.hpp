#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "metgraph/errors.hpp"

namespace metgraph {

/// Finite group as a multiplication table. Elements are indices 0..d-1 with
/// 0 the identity for the built-in constructors. Identity and inverse laws
/// are always validated; associativity is validated in full for
/// user-supplied tables and via Light's test on the known generating set
/// for the built-in families.
class FiniteGroup {
public:
    static FiniteGroup trivial() { return cyclic(1); }

    /// Z/n, elements 0..n-1 under addition mod n.
    static FiniteGroup cyclic(int n) {
        if (n < 1) throw ValidationError("cyclic group order must be >= 1");
        FiniteGroup grp;
        grp.order_ = n;
        grp.mul_.resize(static_cast<std::size_t>(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) grp.mul_[a * n + b] = (a + b) % n;
        grp.finish({n > 1 ? 1 : 0});
        grp.name_ = "Z/" + std::to_string(n);
        return grp;
    }

    /// (Z/n)^k, elements encoded mixed-radix: index = sum c_i n^i.
    static FiniteGroup power(int n, int k) {
        if (n < 1 || k < 0) throw ValidationError("invalid (Z/n)^k parameters");
        FiniteGroup grp;
        long long d = 1;
        for (int i = 0; i < k; ++i) {
            d *= n;
            if (d > 2'000'000) throw ValidationError("group order too large");
        }
        grp.order_ = static_cast<int>(d);
        grp.mul_.resize(static_cast<std::size_t>(d) * d);
        std::vector<int> da(k), db(k);
        for (int a = 0; a < d; ++a) {
            decode(a, n, k, da);
            for (int b = 0; b < d; ++b) {
                decode(b, n, k, db);
                long long idx = 0, p = 1;
                for (int i = 0; i < k; ++i) {
                    idx += ((da[i] + db[i]) % n) * p;
                    p *= n;
                }
                grp.mul_[static_cast<std::size_t>(a) * d + b] = static_cast<int>(idx);
            }
        }
        std::vector<int> gens;
        long long p = 1;
        for (int i = 0; i < k && n > 1; ++i) {
            gens.push_back(static_cast<int>(p));
            p *= n;
        }
        grp.finish(gens);
        grp.name_ = "(Z/" + std::to_string(n) + ")^" + std::to_string(k);
        return grp;
    }

    /// User-supplied table; fully validated (closure, identity, inverses,
    /// associativity).
    static FiniteGroup from_table(const std::vector<std::vector<int>>& mul) {
        const int d = static_cast<int>(mul.size());
        if (d == 0) throw ValidationError("empty multiplication table");
        FiniteGroup grp;
        grp.order_ = d;
        grp.mul_.resize(static_cast<std::size_t>(d) * d);
        for (int a = 0; a < d; ++a) {
            if (static_cast<int>(mul[a].size()) != d)
                throw ValidationError("multiplication table is not square");
            for (int b = 0; b < d; ++b) {
                if (mul[a][b] < 0 || mul[a][b] >= d)
                    throw ValidationError("multiplication table entry out of range");
                grp.mul_[a * d + b] = mul[a][b];
            }
        }
        std::vector<int> all(d);
        std::iota(all.begin(), all.end(), 0);
        grp.finish(all);
        grp.name_ = "table[" + std::to_string(d) + "]";
        return grp;
    }

    int order() const { return order_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
    int inv(int a) const { return inv_[a]; }
    const std::string& name() const { return name_; }

    /// Subgroup generated by the given elements (sorted element list).
    std::vector<int> generated_by(const std::vector<int>& gens) const {
        std::vector<char> seen(order_, 0);
        std::vector<int> frontier{identity_};
        seen[identity_] = 1;
        while (!frontier.empty()) {
            int x = frontier.back();
            frontier.pop_back();
            for (int gen : gens) {
                int y = mul(x, gen);
                if (!seen[y]) {
                    seen[y] = 1;
                    frontier.push_back(y);
                }
            }
        }
        std::vector<int> out;
        for (int i = 0; i < order_; ++i)
            if (seen[i]) out.push_back(i);
        return out;
    }

private:
    static void decode(int idx, int n, int k, std::vector<int>& out) {
        for (int i = 0; i < k; ++i) {
            out[i] = idx % n;
            idx /= n;
        }
    }

    /// Locate identity, build inverses, run the law checks. `gens` is a
    /// generating set used by Light's associativity test: a(bc) = (ab)c for
    /// all b in gens and all a, c implies full associativity.
    void finish(const std::vector<int>& gens) {
        const int d = order_;
        identity_ = -1;
        for (int e = 0; e < d; ++e) {
            bool ok = true;
            for (int a = 0; a < d && ok; ++a)
                ok = (mul(e, a) == a) && (mul(a, e) == a);
            if (ok) {
                identity_ = e;
                break;
            }
        }
        if (identity_ < 0) throw ValidationError("group table has no identity");
        inv_.assign(d, -1);
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                if (mul(a, b) == identity_ && mul(b, a) == identity_) {
                    inv_[a] = b;
                    break;
                }
            }
            if (inv_[a] < 0) throw ValidationError("group table misses an inverse");
        }
        for (int b : gens)
            for (int a = 0; a < d; ++a)
                for (int c = 0; c < d; ++c)
                    if (mul(a, mul(b, c)) != mul(mul(a, b), c))
                        throw ValidationError("group table is not associative");
    }

    int order_ = 0;
    int identity_ = 0;
    std::vector<int> mul_;
    std::vector<int> inv_;
    std::string name_;
};

} // namespace metgraph
