#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace sgrid {

/// Ordered set of attribute ids. The sorted, duplicate-free form is the
/// canonical identity used for equality, ordering and hashing.
class Subspace {
public:
    Subspace() = default;

    explicit Subspace(std::vector<int> attrs) : attrs_(std::move(attrs)) {
        std::sort(attrs_.begin(), attrs_.end());
        attrs_.erase(std::unique(attrs_.begin(), attrs_.end()), attrs_.end());
    }

    static Subspace single(int a) { return Subspace(std::vector<int>{a}); }

    Subspace with(int a) const {
        std::vector<int> v(attrs_);
        v.push_back(a);
        return Subspace(std::move(v));
    }

    int size() const { return static_cast<int>(attrs_.size()); }
    bool empty() const { return attrs_.empty(); }
    bool contains(int a) const { return std::binary_search(attrs_.begin(), attrs_.end(), a); }
    const std::vector<int>& attrs() const { return attrs_; }

    bool operator==(const Subspace&) const = default;
    auto operator<=>(const Subspace&) const = default;  // lexicographic on attrs

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < attrs_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(attrs_[i]);
        }
        s += '}';
        return s;
    }

private:
    std::vector<int> attrs_;
};

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const {
        std::size_t h = 1469598103934665603ull;  // FNV-1a
        for (int a : s.attrs()) {
            h ^= static_cast<std::size_t>(a) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace sgrid
