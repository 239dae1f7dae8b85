#include "encforge/numerics/param_store.hpp"

#include "encforge/error.hpp"

namespace encforge::numerics {

void ParamStore::add(std::string name, Tensor value) {
  if (by_name_.contains(name)) throw PreconditionError("duplicate parameter '" + name + "'");
  by_name_.emplace(name, entries_.size());
  Tensor grad = Tensor::zeros_like(value);
  entries_.push_back(Entry{std::move(name), std::move(value), std::move(grad)});
}

bool ParamStore::contains(std::string_view name) const {
  return by_name_.find(name) != by_name_.end();
}

std::size_t ParamStore::index(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw IndexError("no parameter named '" + std::string(name) + "'");
  return it->second;
}

std::size_t ParamStore::element_count() const noexcept {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.value.size();
  return n;
}

void ParamStore::zero_grad() {
  for (auto& e : entries_) e.grad.fill(0.0);
  grads_populated_ = false;
}

bool ParamStore::same_values(const ParamStore& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name != other.entries_[i].name) return false;
    if (!(entries_[i].value == other.entries_[i].value)) return false;
  }
  return true;
}

}  // namespace encforge::numerics
