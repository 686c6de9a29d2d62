#pragma once

#include "stabpair/core/group.hpp"

#include <map>
#include <utility>
#include <vector>

namespace stabpair {

/// vector: C^{N+1} with the standard action; wedge2: the exterior square;
/// inert: C^{N+1} with trivial action (the right factor of End(C^{N+1}) under left multiplication).
enum class SlotKind { vector, wedge2, inert };

int slot_dimension(SlotKind kind, int n);
/// Basis index of e_i ^ e_j (i < j) in the ordered basis (0,1),(0,2),...,(n-2,n-1).
int wedge_index(int i, int j, int n);
std::pair<int, int> wedge_pair(int index, int n);
/// Torus character of one slot basis vector.
std::vector<long> slot_character(SlotKind kind, int index, int n);
/// Matrix of sigma on a slot (identity for inert slots).
FloatMatrix slot_matrix(SlotKind kind, const FloatMatrix& sigma);
/// Derivative at the identity of the slot representation in direction E.
FloatMatrix slot_derivative(SlotKind kind, const FloatMatrix& e);

/// Sparse vector in a tensor product of slots.
template <class K>
class TensorVector {
 public:
  using Index = std::vector<int>;

  TensorVector(int n_plus_1, std::vector<SlotKind> slots) : n_(n_plus_1), slots_(std::move(slots)) {
    require_dims(n_ >= 2, "tensor needs N >= 1");
    require_dims(!slots_.empty(), "tensor needs at least one slot");
  }

  int group_size() const { return n_; }
  const std::vector<SlotKind>& slots() const { return slots_; }
  const std::map<Index, K>& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }

  void set(const Index& idx, const K& value) {
    require_dims(idx.size() == slots_.size(), "tensor index length mismatch");
    for (std::size_t s = 0; s < idx.size(); ++s)
      require_dims(idx[s] >= 0 && idx[s] < slot_dimension(slots_[s], n_), "tensor index out of range");
    if (ScalarTraits<K>::is_zero(value))
      coords_.erase(idx);
    else
      coords_[idx] = value;
  }
  void add(const Index& idx, const K& value) {
    auto it = coords_.find(idx);
    set(idx, it == coords_.end() ? value : K(it->second + value));
  }

  std::vector<long> character(const Index& idx) const {
    std::vector<long> ch(n_, 0);
    for (std::size_t s = 0; s < idx.size(); ++s) {
      auto c = slot_character(slots_[s], idx[s], n_);
      for (int i = 0; i < n_; ++i) ch[i] += c[i];
    }
    return ch;
  }

  /// Total dense dimension and row-major flattening.
  std::size_t dense_size() const {
    std::size_t d = 1;
    for (auto s : slots_) d *= static_cast<std::size_t>(slot_dimension(s, n_));
    return d;
  }

  friend TensorVector tensor_product(const TensorVector& a, const TensorVector& b) {
    require_dims(a.n_ == b.n_, "tensor group size mismatch");
    std::vector<SlotKind> slots = a.slots_;
    slots.insert(slots.end(), b.slots_.begin(), b.slots_.end());
    TensorVector r(a.n_, slots);
    for (const auto& [ia, ca] : a.coords_)
      for (const auto& [ib, cb] : b.coords_) {
        Index idx = ia;
        idx.insert(idx.end(), ib.begin(), ib.end());
        r.set(idx, ca * cb);
      }
    return r;
  }

  friend bool operator==(const TensorVector& a, const TensorVector& b) {
    return a.n_ == b.n_ && a.slots_ == b.slots_ && a.coords_ == b.coords_;
  }

 private:
  int n_;
  std::vector<SlotKind> slots_;
  std::map<Index, K> coords_;
};

using ExactTensor = TensorVector<GaussianRational>;
using FloatTensor = TensorVector<Complex>;

FloatTensor to_float(const ExactTensor& t);
inline const FloatTensor& to_float(const FloatTensor& t) { return t; }

/// Dense coordinates in row-major slot order.
std::vector<Complex> dense_coordinates(const FloatTensor& t);
/// sigma applied slotwise, returned densely.
std::vector<Complex> act_dense(const FloatMatrix& sigma, const FloatTensor& t);
FloatTensor act(const FloatMatrix& sigma, const FloatTensor& t);
/// Exact action for exact group elements.
ExactTensor act(const ExactMatrix& sigma, const ExactTensor& t);
/// Applies a linear map on one slot of a dense tensor.
std::vector<Complex> apply_on_slot(const std::vector<Complex>& dense, const std::vector<int>& dims, std::size_t slot,
                                   const FloatMatrix& m);
std::vector<int> slot_dimensions(const std::vector<SlotKind>& slots, int n);

/// The identity operator viewed as sum_i e_i (x) e_i in C^{N+1} (x) inert.
ExactTensor identity_tensor(int n_plus_1);

}  // namespace stabpair
