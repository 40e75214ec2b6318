#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gtdyn/errors.hpp"

namespace gtdyn {

/// Subset of a fixed finite universe {0,...,n-1}, packed into 64-bit words.
/// Value type: cheap to copy for the universe sizes this library targets
/// (a few thousand states at most).
class Subset {
  public:
    Subset() = default;

    explicit Subset(int universe_size)
        : n_(universe_size), w_((universe_size + 63) / 64, 0) {
        if (universe_size < 0) throw OutOfRange("negative universe size");
    }

    static Subset empty_set(int n) { return Subset(n); }

    static Subset full_set(int n) {
        Subset s(n);
        for (int i = 0; i < n; ++i) s.insert(i);
        return s;
    }

    static Subset of(int n, const std::vector<int>& members) {
        Subset s(n);
        for (int m : members) s.insert(m);
        return s;
    }

    int universe_size() const { return n_; }

    bool contains(int i) const {
        check(i);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }

    void insert(int i) {
        check(i);
        w_[i >> 6] |= std::uint64_t(1) << (i & 63);
    }

    void erase(int i) {
        check(i);
        w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }

    int count() const {
        int c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    bool empty() const {
        for (auto w : w_)
            if (w) return false;
        return true;
    }

    bool is_subset_of(const Subset& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    bool intersects(const Subset& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }

    Subset operator|(const Subset& o) const { return zip(o, [](auto a, auto b) { return a | b; }); }
    Subset operator&(const Subset& o) const { return zip(o, [](auto a, auto b) { return a & b; }); }
    Subset operator^(const Subset& o) const { return zip(o, [](auto a, auto b) { return a ^ b; }); }
    Subset operator-(const Subset& o) const { return zip(o, [](auto a, auto b) { return a & ~b; }); }

    Subset complement() const {
        Subset r(n_);
        for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = ~w_[k];
        r.trim();
        return r;
    }

    bool operator==(const Subset& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Subset& o) const { return !(*this == o); }

    /// Lexicographic order on the sorted member lists; also the canonical
    /// order for set-system normalization.
    bool operator<(const Subset& o) const { return members() < o.members(); }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(count());
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t w = w_[k];
            while (w) {
                int b = std::countr_zero(w);
                out.push_back(int(k) * 64 + b);
                w &= w - 1;
            }
        }
        return out;
    }

    template <class F>
    void for_each(F f) const {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t w = w_[k];
            while (w) {
                int b = std::countr_zero(w);
                f(int(k) * 64 + b);
                w &= w - 1;
            }
        }
    }

    int front() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return int(k) * 64 + std::countr_zero(w_[k]);
        throw OutOfRange("front() of empty subset");
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int m : members()) {
            if (!first) s += ",";
            s += std::to_string(m);
            first = false;
        }
        return s + "}";
    }

    std::size_t hash() const {
        std::size_t h = std::hash<int>{}(n_);
        for (auto w : w_) h = h * 1099511628211ull + std::hash<std::uint64_t>{}(w);
        return h;
    }

  private:
    void check(int i) const {
        if (i < 0 || i >= n_) throw OutOfRange("state index " + std::to_string(i));
    }

    void trim() {
        if (n_ % 64 && !w_.empty())
            w_.back() &= (std::uint64_t(1) << (n_ % 64)) - 1;
    }

    template <class Op>
    Subset zip(const Subset& o, Op op) const {
        if (n_ != o.n_) throw OutOfRange("subset universe mismatch");
        Subset r(n_);
        for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = op(w_[k], o.w_[k]);
        return r;
    }

    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct SubsetHash {
    std::size_t operator()(const Subset& s) const { return s.hash(); }
};

}  // namespace gtdyn
