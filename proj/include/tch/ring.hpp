#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "tch/errors.hpp"

namespace tch {

/// Coefficient ring k = ⊕_i GF(2)·e_i for a finite set of mutually orthogonal
/// idempotents. The ring is non-unital in general; each e_i is a local unit.
/// Products are diagonal: e_i · e_j = δ_ij e_i, and 1·1 = 1 within each summand.
/// Labels are ordered by declaration; that order is part of every canonical form.
class Ring {
  public:
    Ring() = default;

    /// Adds a new idempotent label; throws DuplicateName on repeats.
    int add_label(const std::string& label) {
        if (index_.count(label))
            throw DuplicateName("duplicate idempotent label '" + label + "'");
        index_[label] = static_cast<int>(labels_.size());
        labels_.push_back(label);
        return static_cast<int>(labels_.size()) - 1;
    }

    int size() const { return static_cast<int>(labels_.size()); }

    const std::string& label(int i) const { return labels_.at(static_cast<size_t>(i)); }

    const std::vector<std::string>& labels() const { return labels_; }

    bool has(const std::string& label) const { return index_.count(label) != 0; }

    int find(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end())
            throw UnknownName("unknown idempotent label '" + label + "'");
        return it->second;
    }

  private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
};

/// GF(2) scalar helpers (values are 0/1 stored in int).
inline int gf2_add(int a, int b) { return (a ^ b) & 1; }
inline int gf2_mul(int a, int b) { return (a & b) & 1; }

}  // namespace tch
