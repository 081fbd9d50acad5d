#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qrecov {

/// Names and dimensions of the tensor factors of a composite system, in
/// Kronecker order (first factor is the most significant index).
class CompositeLabels {
 public:
  CompositeLabels() = default;
  CompositeLabels(std::vector<std::string> names, std::vector<std::size_t> dims);

  /// Labels "S0", "S1", ... for the given dimensions.
  static CompositeLabels anonymous(std::vector<std::size_t> dims);
  static CompositeLabels single(std::string name, std::size_t dim);

  std::size_t size() const noexcept { return dims_.size(); }
  std::size_t total_dim() const noexcept;
  std::size_t dim(std::size_t i) const { return dims_.at(i); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  /// Index of the subsystem called `name`; throws InvalidParameter if absent.
  std::size_t index_of(const std::string& name) const;
  std::vector<std::size_t> indices_of(std::span<const std::string> names) const;

  /// Subsystems at `indices`, in that order.
  CompositeLabels select(std::span<const std::size_t> indices) const;
  /// Subsystems not in `indices`, in original order.
  CompositeLabels remove(std::span<const std::size_t> indices) const;
  /// Result position p holds subsystem perm[p].
  CompositeLabels permuted(std::span<const std::size_t> perm) const;
  CompositeLabels concat(const CompositeLabels& other) const;

  friend bool operator==(const CompositeLabels&, const CompositeLabels&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> dims_;
};

/// Throws InvalidParameter unless `perm` is a permutation of 0..n-1.
void validate_permutation(std::span<const std::size_t> perm, std::size_t n);
std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm);

}  // namespace qrecov
