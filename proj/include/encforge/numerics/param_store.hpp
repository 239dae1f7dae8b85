#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "encforge/numerics/tensor.hpp"

namespace encforge::numerics {

/// Named parameters with a parallel gradient slot per entry.
///
/// Iteration order is insertion order and never changes, which fixes the
/// layout of checkpoints and the order of optimizer updates.
class ParamStore {
 public:
  struct Entry {
    std::string name;
    Tensor value;
    Tensor grad;
  };

  void add(std::string name, Tensor value);

  bool contains(std::string_view name) const;
  std::size_t index(std::string_view name) const;

  Entry& entry(std::size_t i) { return entries_[i]; }
  const Entry& entry(std::size_t i) const { return entries_[i]; }
  Tensor& value(std::string_view name) { return entries_[index(name)].value; }
  const Tensor& value(std::string_view name) const { return entries_[index(name)].value; }
  Tensor& grad(std::string_view name) { return entries_[index(name)].grad; }
  const Tensor& grad(std::string_view name) const { return entries_[index(name)].grad; }

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t element_count() const noexcept;
  auto begin() { return entries_.begin(); }
  auto end() { return entries_.end(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  void zero_grad();
  // Set by GradContext::backward; cleared by zero_grad().
  bool has_gradients() const noexcept { return grads_populated_; }
  void mark_gradients() noexcept { grads_populated_ = true; }

  // Names and values only; gradient slots are scratch.
  bool same_values(const ParamStore& other) const;

 private:
  std::vector<Entry> entries_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
  bool grads_populated_ = false;
};

}  // namespace encforge::numerics
