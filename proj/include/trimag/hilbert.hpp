// Copyright 2026 The trimag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRIMAG_HILBERT_HPP
#define TRIMAG_HILBERT_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <Eigen/Sparse>

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "trimag/common.hpp"

namespace trimag {

using SparseC = Eigen::SparseMatrix<Complex>;
using TripletC = Eigen::Triplet<Complex>;

/// Ordered list of subsystem dimensions of a composite truncated space.
/// The order is fixed at construction; project convention is
/// (left mode, right mode, spin). The last subsystem varies fastest in the
/// composite index, i.e. |i0, i1, i2> maps to (i0*d1 + i1)*d2 + i2.
class SpaceDescriptor {
 public:
  SpaceDescriptor() = default;
  explicit SpaceDescriptor(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw InvalidArgument("space needs at least one subsystem");
    for (int d : dims_)
      if (d < 1) throw InvalidArgument("subsystem dimension must be >= 1");
    total_ = std::accumulate(dims_.begin(), dims_.end(), 1, std::multiplies<>());
  }

  int subsystems() const { return static_cast<int>(dims_.size()); }
  int dim(int k) const {
    check_index(k);
    return dims_[k];
  }
  const std::vector<int>& dims() const { return dims_; }
  int total() const { return total_; }

  /// Stride of subsystem k in the flattened index.
  int stride(int k) const {
    check_index(k);
    int s = 1;
    for (int j = k + 1; j < subsystems(); ++j) s *= dims_[j];
    return s;
  }

  /// Flatten a multi-index (one level per subsystem).
  int flatten(const std::vector<int>& levels) const {
    if (static_cast<int>(levels.size()) != subsystems())
      throw InvalidArgument("multi-index length does not match subsystem count");
    int idx = 0;
    for (int k = 0; k < subsystems(); ++k) {
      if (levels[k] < 0 || levels[k] >= dims_[k])
        throw InvalidArgument("level outside subsystem dimension");
      idx = idx * dims_[k] + levels[k];
    }
    return idx;
  }

  void check_index(int k) const {
    if (k < 0 || k >= subsystems()) throw InvalidArgument("subsystem index out of range");
  }

  bool operator==(const SpaceDescriptor& o) const { return dims_ == o.dims_; }
  bool operator!=(const SpaceDescriptor& o) const { return !(*this == o); }

 private:
  std::vector<int> dims_;
  int total_ = 0;
};

inline SpaceDescriptor make_space(std::vector<int> dims) { return SpaceDescriptor(std::move(dims)); }

/// Sparse complex matrix tagged with the space it acts on. Immutable in
/// practice: every algebraic operation returns a new value.
class Operator {
 public:
  Operator() = default;
  Operator(SpaceDescriptor space, SparseC entries)
      : space_(std::move(space)), mat_(std::move(entries)) {
    if (mat_.rows() != space_.total() || mat_.cols() != space_.total())
      throw InvalidArgument("operator shape does not match space dimension");
  }
  Operator(SpaceDescriptor space, const Eigen::MatrixXcd& dense)
      : Operator(std::move(space), SparseC(dense.sparseView())) {}

  const SpaceDescriptor& space() const { return space_; }
  const SparseC& sparse() const { return mat_; }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(mat_); }
  int dim() const { return space_.total(); }

  Operator adjoint() const { return Operator(space_, SparseC(mat_.adjoint())); }

  Operator operator+(const Operator& o) const {
    check_same_space(o);
    return Operator(space_, SparseC(mat_ + o.mat_));
  }
  Operator operator-(const Operator& o) const {
    check_same_space(o);
    return Operator(space_, SparseC(mat_ - o.mat_));
  }
  Operator operator*(const Operator& o) const {
    check_same_space(o);
    return Operator(space_, SparseC(mat_ * o.mat_));
  }
  friend Operator operator*(Complex c, const Operator& a) {
    return Operator(a.space_, SparseC(c * a.mat_));
  }
  friend Operator operator*(double c, const Operator& a) { return Complex(c, 0.0) * a; }
  Operator operator-() const { return Complex(-1.0, 0.0) * *this; }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return mat_ * v; }

  Complex coeff(int row, int col) const { return mat_.coeff(row, col); }

  double hermiticity_defect() const {
    return SparseC(mat_ - SparseC(mat_.adjoint())).norm();
  }
  bool is_hermitian(double tol = 1e-12) const {
    const double scale = std::max(1.0, mat_.norm());
    return hermiticity_defect() <= tol * scale;
  }

 private:
  void check_same_space(const Operator& o) const {
    if (space_ != o.space_) throw InvalidArgument("operators live on different spaces");
  }
  SpaceDescriptor space_;
  SparseC mat_;
};

namespace detail {

/// Embed a local operator acting on subsystem k into the composite space:
/// identity on every other factor.
inline Operator embed(const SpaceDescriptor& space, int k,
                      const std::vector<TripletC>& local, int local_dim) {
  space.check_index(k);
  if (local_dim != space.dim(k)) throw InvalidArgument("local operator dimension mismatch");
  const int before = [&] {
    int n = 1;
    for (int j = 0; j < k; ++j) n *= space.dim(j);
    return n;
  }();
  const int stride = space.stride(k);
  std::vector<TripletC> trips;
  trips.reserve(local.size() * static_cast<size_t>(before) * stride);
  for (int b = 0; b < before; ++b) {
    const int base = b * space.dim(k) * stride;
    for (const auto& t : local)
      for (int a = 0; a < stride; ++a)
        trips.emplace_back(base + t.row() * stride + a, base + t.col() * stride + a, t.value());
  }
  SparseC m(space.total(), space.total());
  m.setFromTriplets(trips.begin(), trips.end());
  return Operator(space, std::move(m));
}

}  // namespace detail

inline Operator identity_op(const SpaceDescriptor& space) {
  SparseC m(space.total(), space.total());
  m.setIdentity();
  return Operator(space, std::move(m));
}

inline Operator zero_op(const SpaceDescriptor& space) {
  return Operator(space, SparseC(space.total(), space.total()));
}

/// Annihilation operator on subsystem k: <n-1|a|n> = sqrt(n).
inline Operator lowering_op(const SpaceDescriptor& space, int k) {
  space.check_index(k);
  const int d = space.dim(k);
  std::vector<TripletC> local;
  for (int n = 1; n < d; ++n) local.emplace_back(n - 1, n, std::sqrt(double(n)));
  return detail::embed(space, k, local, d);
}

inline Operator raising_op(const SpaceDescriptor& space, int k) {
  return lowering_op(space, k).adjoint();
}

inline Operator number_op(const SpaceDescriptor& space, int k) {
  space.check_index(k);
  const int d = space.dim(k);
  std::vector<TripletC> local;
  for (int n = 1; n < d; ++n) local.emplace_back(n, n, double(n));
  return detail::embed(space, k, local, d);
}

/// |bra><ket| on subsystem k. Level conventions: qutrit g=0, e=1, f=2;
/// qubit e=0, f=1.
inline Operator transition_op(const SpaceDescriptor& space, int k, int bra, int ket) {
  space.check_index(k);
  const int d = space.dim(k);
  if (bra < 0 || bra >= d || ket < 0 || ket >= d)
    throw InvalidArgument("transition level outside subsystem dimension");
  return detail::embed(space, k, {TripletC(bra, ket, 1.0)}, d);
}

inline Operator level_projector(const SpaceDescriptor& space, int k, int level) {
  return transition_op(space, k, level, level);
}

/// Pauli-z of the effective qubit, |f><f| - |e><e|.
/// On a qubit factor (e,f) = (0,1) this is diag(-1, +1); on a qutrit factor
/// (g,e,f) = (0,1,2) it is diag(0, -1, +1).
inline Operator sigma_z_op(const SpaceDescriptor& space, int k) {
  space.check_index(k);
  const int d = space.dim(k);
  if (d == 2) return detail::embed(space, k, {TripletC(0, 0, -1.0), TripletC(1, 1, 1.0)}, d);
  if (d == 3) return detail::embed(space, k, {TripletC(1, 1, -1.0), TripletC(2, 2, 1.0)}, d);
  throw InvalidArgument("sigma_z defined for 2- or 3-level subsystems");
}

/// Pure state vector or density matrix tagged with its space.
class QuantumState {
 public:
  static QuantumState pure(SpaceDescriptor space, Eigen::VectorXcd psi) {
    if (psi.size() != space.total()) throw InvalidArgument("state vector length mismatch");
    QuantumState s;
    s.space_ = std::move(space);
    s.psi_ = std::move(psi);
    return s;
  }
  static QuantumState mixed(SpaceDescriptor space, Eigen::MatrixXcd rho) {
    if (rho.rows() != space.total() || rho.cols() != space.total())
      throw InvalidArgument("density matrix shape mismatch");
    QuantumState s;
    s.space_ = std::move(space);
    s.rho_ = std::move(rho);
    return s;
  }

  const SpaceDescriptor& space() const { return space_; }
  bool is_pure() const { return psi_.has_value(); }

  const Eigen::VectorXcd& vector() const {
    if (!psi_) throw InvalidArgument("state is not pure");
    return *psi_;
  }
  /// Density matrix view; densifies a pure state.
  Eigen::MatrixXcd density() const {
    if (psi_) return (*psi_) * psi_->adjoint();
    return *rho_;
  }

  double norm() const { return psi_ ? psi_->norm() : std::sqrt(std::abs(rho_->trace())); }
  Complex trace() const { return psi_ ? Complex(psi_->squaredNorm(), 0) : rho_->trace(); }

  Complex expectation(const Operator& op) const {
    if (op.space() != space_) throw InvalidArgument("observable lives on a different space");
    if (psi_) return psi_->dot(op.sparse() * (*psi_));
    return (op.sparse() * (*rho_)).trace();
  }

  /// Checks the state invariants; throws InvalidArgument on violation.
  /// `allow_subnormalized` exempts conditional-evolution states whose norm
  /// tracks accumulated loss.
  void validate(bool allow_subnormalized = false) const {
    if (psi_) {
      const double n = psi_->norm();
      if (!allow_subnormalized && std::abs(n - 1.0) > 1e-10)
        throw InvalidArgument("pure state norm deviates from 1 by more than 1e-10");
      if (allow_subnormalized && n > 1.0 + 1e-10)
        throw InvalidArgument("conditional state norm exceeds 1");
      return;
    }
    const auto& rho = *rho_;
    const double scale = std::max(1.0, rho.norm());
    if ((rho - rho.adjoint()).norm() > 1e-12 * scale)
      throw InvalidArgument("density matrix is not Hermitian to 1e-12");
    if (!allow_subnormalized && std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-10)
      throw InvalidArgument("density matrix trace deviates from 1 by more than 1e-10");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw InvalidArgument("density matrix has eigenvalue below -1e-10");
  }

  /// Population of the top level of subsystem k (truncation-leakage probe).
  double top_level_population(int k) const {
    space_.check_index(k);
    const int top = space_.dim(k) - 1;
    double p = 0.0;
    const int stride = space_.stride(k);
    const int dk = space_.dim(k);
    const int total = space_.total();
    for (int idx = 0; idx < total; ++idx) {
      if ((idx / stride) % dk != top) continue;
      if (psi_)
        p += std::norm((*psi_)(idx));
      else
        p += (*rho_)(idx, idx).real();
    }
    return p;
  }

 private:
  SpaceDescriptor space_;
  std::optional<Eigen::VectorXcd> psi_;
  std::optional<Eigen::MatrixXcd> rho_;
};

/// Basis ket |levels[0], levels[1], ...>.
inline QuantumState basis_state(const SpaceDescriptor& space, const std::vector<int>& levels) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(space.total());
  psi(space.flatten(levels)) = 1.0;
  return QuantumState::pure(space, std::move(psi));
}

/// Projector |levels><levels| as an observable.
inline Operator basis_projector(const SpaceDescriptor& space, const std::vector<int>& levels) {
  const int i = space.flatten(levels);
  SparseC m(space.total(), space.total());
  m.insert(i, i) = 1.0;
  return Operator(space, std::move(m));
}

/// Reduced state over the kept subsystems (ascending order preserved).
inline QuantumState partial_trace(const QuantumState& state, const std::vector<int>& keep) {
  if (keep.empty()) throw InvalidArgument("keep set must be non-empty");
  const auto& space = state.space();
  std::vector<int> keep_sorted = keep;
  std::sort(keep_sorted.begin(), keep_sorted.end());
  keep_sorted.erase(std::unique(keep_sorted.begin(), keep_sorted.end()), keep_sorted.end());
  for (int k : keep_sorted) space.check_index(k);

  std::vector<int> traced;
  for (int k = 0; k < space.subsystems(); ++k)
    if (!std::binary_search(keep_sorted.begin(), keep_sorted.end(), k)) traced.push_back(k);

  std::vector<int> keep_dims;
  for (int k : keep_sorted) keep_dims.push_back(space.dim(k));
  SpaceDescriptor reduced(keep_dims.empty() ? std::vector<int>{1} : keep_dims);

  const Eigen::MatrixXcd rho = state.density();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(reduced.total(), reduced.total());

  int traced_total = 1;
  for (int k : traced) traced_total *= space.dim(k);

  // Walk kept row/column multi-indices; sum over identical traced indices.
  for (int i = 0; i < reduced.total(); ++i) {
    for (int j = 0; j < reduced.total(); ++j) {
      Complex sum = 0.0;
      for (int t = 0; t < traced_total; ++t) {
        int row = 0, col = 0;
        int it = i, jt = j, tt = t;
        // Decompose and recompose indices subsystem by subsystem.
        std::vector<int> row_levels(space.subsystems()), col_levels(space.subsystems());
        for (int k = static_cast<int>(keep_sorted.size()) - 1; k >= 0; --k) {
          const int d = space.dim(keep_sorted[k]);
          row_levels[keep_sorted[k]] = it % d;
          it /= d;
        }
        for (int k = static_cast<int>(keep_sorted.size()) - 1; k >= 0; --k) {
          const int d = space.dim(keep_sorted[k]);
          col_levels[keep_sorted[k]] = jt % d;
          jt /= d;
        }
        for (int k = static_cast<int>(traced.size()) - 1; k >= 0; --k) {
          const int d = space.dim(traced[k]);
          row_levels[traced[k]] = tt % d;
          col_levels[traced[k]] = tt % d;
          tt /= d;
        }
        for (int k = 0; k < space.subsystems(); ++k) {
          row = row * space.dim(k) + row_levels[k];
          col = col * space.dim(k) + col_levels[k];
        }
        sum += rho(row, col);
      }
      out(i, j) = sum;
    }
  }
  return QuantumState::mixed(std::move(reduced), std::move(out));
}

/// Transpose on the indexed tensor factor only. Pure states are densified.
inline Eigen::MatrixXcd partial_transpose(const QuantumState& state, int k) {
  const auto& space = state.space();
  space.check_index(k);
  const Eigen::MatrixXcd rho = state.density();
  const int stride = space.stride(k);
  const int dk = space.dim(k);
  const int total = space.total();
  Eigen::MatrixXcd out(total, total);
  for (int i = 0; i < total; ++i) {
    const int ik = (i / stride) % dk;
    const int ibase = i - ik * stride;
    for (int j = 0; j < total; ++j) {
      const int jk = (j / stride) % dk;
      const int jbase = j - jk * stride;
      out(ibase + jk * stride, jbase + ik * stride) = rho(i, j);
    }
  }
  return out;
}

/// Sum of singular values.
inline double trace_norm(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("trace norm requires a square matrix");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().sum();
}

}  // namespace trimag

#endif  // TRIMAG_HILBERT_HPP
