#ifndef ORLICZ_GAUSS_MULTI_INDEX_HPP
#define ORLICZ_GAUSS_MULTI_INDEX_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace orlicz_gauss {

/// Multi-index alpha in N^n; fixed length per expansion.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<unsigned> entries)
        : entries_(std::move(entries)) {}
    static MultiIndex zeros(std::size_t dim) {
        return MultiIndex(std::vector<unsigned>(dim, 0u));
    }
    static MultiIndex unit(std::size_t dim, std::size_t axis) {
        MultiIndex m = zeros(dim);
        m.entries_[axis] = 1;
        return m;
    }

    std::size_t dim() const { return entries_.size(); }
    unsigned operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<unsigned>& entries() const { return entries_; }

    /// |alpha| = sum of entries.
    unsigned order() const {
        return std::accumulate(entries_.begin(), entries_.end(), 0u);
    }

    MultiIndex raised(std::size_t axis) const {
        MultiIndex m = *this;
        m.entries_[axis] += 1;
        return m;
    }
    MultiIndex lowered(std::size_t axis) const {
        if (entries_[axis] == 0)
            throw std::domain_error("MultiIndex: cannot lower a zero entry");
        MultiIndex m = *this;
        m.entries_[axis] -= 1;
        return m;
    }

    /// alpha! = prod_i alpha_i!
    double factorial() const {
        double f = 1.0;
        for (unsigned e : entries_)
            for (unsigned k = 2; k <= e; ++k) f *= static_cast<double>(k);
        return f;
    }

    bool operator==(const MultiIndex& o) const { return entries_ == o.entries_; }
    bool operator!=(const MultiIndex& o) const { return !(*this == o); }
    // Lexicographic; gives sparse maps a deterministic iteration order.
    bool operator<(const MultiIndex& o) const { return entries_ < o.entries_; }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(entries_[i]);
        }
        return s + ")";
    }

private:
    std::vector<unsigned> entries_;
};

}  // namespace orlicz_gauss

#endif  // ORLICZ_GAUSS_MULTI_INDEX_HPP
