#include "qrecov/labels.hpp"

#include <algorithm>
#include <set>

#include "qrecov/error.hpp"

namespace qrecov {

CompositeLabels::CompositeLabels(std::vector<std::string> names, std::vector<std::size_t> dims)
    : names_(std::move(names)), dims_(std::move(dims)) {
  if (names_.size() != dims_.size()) {
    throw ValidationError("CompositeLabels: names and dims differ in length");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] < 1) {
      throw ValidationError("CompositeLabels: dims >= 1 violated for subsystem '" + names_[i] + "'");
    }
    if (!seen.insert(names_[i]).second) {
      throw ValidationError("CompositeLabels: names unique violated ('" + names_[i] + "' repeated)");
    }
  }
}

CompositeLabels CompositeLabels::anonymous(std::vector<std::size_t> dims) {
  std::vector<std::string> names;
  names.reserve(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) names.push_back("S" + std::to_string(i));
  return CompositeLabels(std::move(names), std::move(dims));
}

CompositeLabels CompositeLabels::single(std::string name, std::size_t dim) {
  return CompositeLabels({std::move(name)}, {dim});
}

std::size_t CompositeLabels::total_dim() const noexcept {
  std::size_t d = 1;
  for (auto k : dims_) d *= k;
  return d;
}

std::size_t CompositeLabels::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InvalidParameter("no subsystem named '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

std::vector<std::size_t> CompositeLabels::indices_of(std::span<const std::string> names) const {
  std::vector<std::size_t> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(index_of(n));
  return out;
}

CompositeLabels CompositeLabels::select(std::span<const std::size_t> indices) const {
  std::vector<std::string> n;
  std::vector<std::size_t> d;
  for (auto i : indices) {
    if (i >= size()) throw ShapeError("subsystem index out of range");
    n.push_back(names_[i]);
    d.push_back(dims_[i]);
  }
  return CompositeLabels(std::move(n), std::move(d));
}

CompositeLabels CompositeLabels::remove(std::span<const std::size_t> indices) const {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < size(); ++i) {
    if (std::find(indices.begin(), indices.end(), i) == indices.end()) keep.push_back(i);
  }
  return select(keep);
}

CompositeLabels CompositeLabels::permuted(std::span<const std::size_t> perm) const {
  validate_permutation(perm, size());
  return select(perm);
}

CompositeLabels CompositeLabels::concat(const CompositeLabels& other) const {
  auto n = names_;
  auto d = dims_;
  n.insert(n.end(), other.names_.begin(), other.names_.end());
  d.insert(d.end(), other.dims_.begin(), other.dims_.end());
  return CompositeLabels(std::move(n), std::move(d));
}

void validate_permutation(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) throw InvalidParameter("permutation has wrong length");
  std::vector<bool> hit(n, false);
  for (auto p : perm) {
    if (p >= n || hit[p]) throw InvalidParameter("invalid permutation of subsystem indices");
    hit[p] = true;
  }
}

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm) {
  validate_permutation(perm, perm.size());
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t p = 0; p < perm.size(); ++p) inv[perm[p]] = p;
  return inv;
}

}  // namespace qrecov
