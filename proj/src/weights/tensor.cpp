#include "stabpair/weights/tensor.hpp"

namespace stabpair {

int slot_dimension(SlotKind kind, int n) { return kind == SlotKind::wedge2 ? n * (n - 1) / 2 : n; }

int wedge_index(int i, int j, int n) {
  require_dims(0 <= i && i < j && j < n, "wedge index needs 0 <= i < j <= N");
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<int, int> wedge_pair(int index, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (wedge_index(i, j, n) == index) return {i, j};
  throw DimensionError("wedge basis index out of range");
}

std::vector<long> slot_character(SlotKind kind, int index, int n) {
  std::vector<long> ch(n, 0);
  switch (kind) {
    case SlotKind::vector:
      ch[index] = 1;
      break;
    case SlotKind::wedge2: {
      auto [i, j] = wedge_pair(index, n);
      ch[i] = 1;
      ch[j] = 1;
      break;
    }
    case SlotKind::inert:
      break;
  }
  return ch;
}

FloatMatrix slot_matrix(SlotKind kind, const FloatMatrix& s) {
  const int n = s.rows();
  if (kind == SlotKind::vector) return s;
  if (kind == SlotKind::inert) return FloatMatrix::identity(n);
  const int m = slot_dimension(kind, n);
  FloatMatrix w(m, m);
  // Column (a,b) is sigma e_a ^ sigma e_b expanded in e_k ^ e_l, k < l.
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l)
          w(wedge_index(k, l, n), wedge_index(a, b, n)) = s(k, a) * s(l, b) - s(l, a) * s(k, b);
  return w;
}

FloatMatrix slot_derivative(SlotKind kind, const FloatMatrix& e) {
  const int n = e.rows();
  if (kind == SlotKind::vector) return e;
  if (kind == SlotKind::inert) return FloatMatrix(n, n);
  const int m = slot_dimension(kind, n);
  FloatMatrix w(m, m);
  auto delta = [](int x, int y) { return x == y ? 1.0 : 0.0; };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l)
          w(wedge_index(k, l, n), wedge_index(a, b, n)) =
              e(k, a) * delta(l, b) + delta(k, a) * e(l, b) - e(l, a) * delta(k, b) - delta(l, a) * e(k, b);
  return w;
}

FloatTensor to_float(const ExactTensor& t) {
  FloatTensor r(t.group_size(), t.slots());
  for (const auto& [i, c] : t.coords()) r.set(i, c.to_complex());
  return r;
}

std::vector<int> slot_dimensions(const std::vector<SlotKind>& slots, int n) {
  std::vector<int> d;
  for (auto s : slots) d.push_back(slot_dimension(s, n));
  return d;
}

namespace {

std::size_t flat_index(const std::vector<int>& idx, const std::vector<int>& dims) {
  std::size_t f = 0;
  for (std::size_t s = 0; s < dims.size(); ++s) f = f * dims[s] + idx[s];
  return f;
}

}  // namespace

std::vector<Complex> dense_coordinates(const FloatTensor& t) {
  auto dims = slot_dimensions(t.slots(), t.group_size());
  std::vector<Complex> out(t.dense_size());
  for (const auto& [i, c] : t.coords()) out[flat_index(i, dims)] = c;
  return out;
}

std::vector<Complex> apply_on_slot(const std::vector<Complex>& dense, const std::vector<int>& dims, std::size_t slot,
                                   const FloatMatrix& m) {
  std::size_t inner = 1, outer = 1;
  for (std::size_t s = slot + 1; s < dims.size(); ++s) inner *= dims[s];
  for (std::size_t s = 0; s < slot; ++s) outer *= dims[s];
  const int d = dims[slot];
  std::vector<Complex> out(dense.size());
  for (std::size_t o = 0; o < outer; ++o)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        Complex f = m(r, c);
        if (f == Complex{}) continue;
        const Complex* src = &dense[(o * d + c) * inner];
        Complex* dst = &out[(o * d + r) * inner];
        for (std::size_t i = 0; i < inner; ++i) dst[i] += f * src[i];
      }
  return out;
}

std::vector<Complex> act_dense(const FloatMatrix& sigma, const FloatTensor& t) {
  require_dims(sigma.rows() == t.group_size(), "group size does not match tensor");
  auto dims = slot_dimensions(t.slots(), t.group_size());
  std::vector<Complex> v = dense_coordinates(t);
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (t.slots()[s] != SlotKind::inert) v = apply_on_slot(v, dims, s, slot_matrix(t.slots()[s], sigma));
  return v;
}

FloatTensor act(const FloatMatrix& sigma, const FloatTensor& t) {
  auto v = act_dense(sigma, t);
  auto dims = slot_dimensions(t.slots(), t.group_size());
  FloatTensor r(t.group_size(), t.slots());
  std::vector<int> idx(dims.size(), 0);
  for (std::size_t f = 0; f < v.size(); ++f) {
    std::size_t rem = f;
    for (std::size_t s = dims.size(); s-- > 0;) {
      idx[s] = static_cast<int>(rem % dims[s]);
      rem /= dims[s];
    }
    r.set(idx, v[f]);
  }
  return r;
}

ExactTensor act(const ExactMatrix& sigma, const ExactTensor& t) {
  const int n = t.group_size();
  require_dims(sigma.rows() == n, "group size does not match tensor");
  // Expand slot by slot over sparse coordinates.
  std::map<std::vector<int>, GaussianRational> cur = t.coords();
  for (std::size_t s = 0; s < t.slots().size(); ++s) {
    SlotKind kind = t.slots()[s];
    if (kind == SlotKind::inert) continue;
    std::map<std::vector<int>, GaussianRational> next;
    for (const auto& [idx, c] : cur) {
      if (kind == SlotKind::vector) {
        for (int k = 0; k < n; ++k) {
          if (sigma(k, idx[s]).is_zero()) continue;
          auto j = idx;
          j[s] = k;
          next[j] += sigma(k, idx[s]) * c;
        }
      } else {
        auto [a, b] = wedge_pair(idx[s], n);
        for (int k = 0; k < n; ++k)
          for (int l = k + 1; l < n; ++l) {
            GaussianRational m = sigma(k, a) * sigma(l, b) - sigma(l, a) * sigma(k, b);
            if (m.is_zero()) continue;
            auto j = idx;
            j[s] = wedge_index(k, l, n);
            next[j] += m * c;
          }
      }
    }
    cur.clear();
    for (auto& [j, c] : next)
      if (!c.is_zero()) cur.emplace(j, c);
  }
  ExactTensor r(n, t.slots());
  for (const auto& [j, c] : cur) r.set(j, c);
  return r;
}

ExactTensor identity_tensor(int n) {
  ExactTensor t(n, {SlotKind::vector, SlotKind::inert});
  for (int i = 0; i < n; ++i) t.set({i, i}, GaussianRational(1));
  return t;
}

}  // namespace stabpair
