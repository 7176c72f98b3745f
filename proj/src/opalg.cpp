// Copyright 2026 The witnesskit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "witnesskit/opalg.hpp"

#include <cmath>
#include <cstring>

namespace wk {

namespace {

void check_bipartite(const CMat& m, BipartiteDims dims, const char* what) {
  if (dims.na < 1 || dims.nb < 1)
    throw Error(std::string(what) + ": invalid subsystem dimensions");
  if (m.rows() != m.cols())
    throw Error(std::string(what) + ": matrix is not square");
  if (m.rows() != dims.total())
    throw Error(std::string(what) + ": matrix size does not match dims");
}

}  // namespace

bool is_hermitian(const CMat& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

void require_hermitian(const CMat& m, const char* what, double tolerance) {
  if (!is_hermitian(m, tolerance))
    throw Error(std::string(what) + ": not hermitian");
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVec kron_vec(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CVec basis_ket(int dim, int k) {
  if (dim < 1 || k < 0 || k >= dim) throw Error("basis_ket: index out of range");
  CVec v = CVec::Zero(dim);
  v(k) = 1.0;
  return v;
}

const CMat& pauli(int idx) {
  static const CMat s0 = [] {
    CMat m(2, 2);
    m << 1, 0, 0, 1;
    return m;
  }();
  static const CMat sx = [] {
    CMat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
  }();
  static const CMat sy = [] {
    CMat m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
  }();
  static const CMat sz = [] {
    CMat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
  }();
  switch (idx) {
    case 0: return s0;
    case 1: return sx;
    case 2: return sy;
    case 3: return sz;
    default: throw Error("pauli: index must be 0..3");
  }
}

CMat partial_transpose(const CMat& m, BipartiteDims dims, Subsystem which) {
  check_bipartite(m, dims, "partial_transpose");
  const int na = dims.na, nb = dims.nb;
  CMat out(m.rows(), m.cols());
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < nb; ++l) {
          if (which == Subsystem::A)
            out(dims.index(i, j), dims.index(k, l)) =
                m(dims.index(k, j), dims.index(i, l));
          else
            out(dims.index(i, j), dims.index(k, l)) =
                m(dims.index(i, l), dims.index(k, j));
        }
  return out;
}

CMat partial_trace(const CMat& m, BipartiteDims dims, Subsystem keep) {
  check_bipartite(m, dims, "partial_trace");
  const int na = dims.na, nb = dims.nb;
  if (keep == Subsystem::A) {
    CMat out = CMat::Zero(na, na);
    for (int i = 0; i < na; ++i)
      for (int k = 0; k < na; ++k)
        for (int j = 0; j < nb; ++j)
          out(i, k) += m(dims.index(i, j), dims.index(k, j));
    return out;
  }
  CMat out = CMat::Zero(nb, nb);
  for (int j = 0; j < nb; ++j)
    for (int l = 0; l < nb; ++l)
      for (int i = 0; i < na; ++i)
        out(j, l) += m(dims.index(i, j), dims.index(i, l));
  return out;
}

namespace {

void phase_fix(CVec& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    double a = std::abs(v(k));
    if (a > 1e-8) {
      v *= std::conj(v(k)) / a;
      return;
    }
  }
}

// lexicographic order on (|v_0|, |v_1|, ..., Re v_0, Re v_1, ...)
bool lex_less(const CVec& x, const CVec& y) {
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    double ax = std::abs(x(k)), ay = std::abs(y(k));
    if (ax != ay) return ax < ay;
  }
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    double rx = x(k).real(), ry = y(k).real();
    if (rx != ry) return rx < ry;
  }
  return false;
}

}  // namespace

EigResult herm_eig(const CMat& m) {
  require_hermitian(m, "herm_eig");
  Eigen::SelfAdjointEigenSolver<CMat> es(m);
  if (es.info() != Eigen::Success) throw Error("herm_eig: solver failed");
  EigResult r{es.eigenvalues(), es.eigenvectors()};
  for (Eigen::Index c = 0; c < r.vectors.cols(); ++c) {
    CVec col = r.vectors.col(c);
    phase_fix(col);
    r.vectors.col(c) = col;
  }
  return r;
}

double min_eigenvalue(const CMat& m) {
  require_hermitian(m, "min_eigenvalue");
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("min_eigenvalue: solver failed");
  return es.eigenvalues()(0);
}

CVec minimal_eigvec(const EigResult& eig, double degeneracy_tol) {
  if (eig.values.size() == 0) throw Error("minimal_eigvec: empty spectrum");
  const double lo = eig.values(0);
  CVec best = eig.vectors.col(0);
  for (Eigen::Index c = 1; c < eig.values.size(); ++c) {
    if (eig.values(c) - lo > degeneracy_tol) break;
    CVec cand = eig.vectors.col(c);
    if (lex_less(best, cand)) best = cand;
  }
  return best;
}

CMat kernel_projector(const CMat& m, double cutoff) {
  EigResult eig = herm_eig(m);
  CMat p = CMat::Zero(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < eig.values.size(); ++c)
    if (std::abs(eig.values(c)) <= cutoff)
      p += eig.vectors.col(c) * eig.vectors.col(c).adjoint();
  return p;
}

SchmidtForm schmidt(const CVec& v, BipartiteDims dims) {
  if (dims.na < 1 || dims.nb < 1)
    throw Error("schmidt: invalid subsystem dimensions");
  if (v.size() != dims.total())
    throw Error("schmidt: vector size does not match dims");
  if (std::abs(v.norm() - 1.0) > 1e-12)
    throw Error("schmidt: vector is not normalized");
  CMat c(dims.na, dims.nb);
  for (int i = 0; i < dims.na; ++i)
    for (int j = 0; j < dims.nb; ++j) c(i, j) = v(dims.index(i, j));
  Eigen::JacobiSVD<CMat> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtForm s;
  s.coefficients = svd.singularValues();
  const int r = static_cast<int>(s.coefficients.size());
  s.basis_a.reserve(r);
  s.basis_b.reserve(r);
  for (int k = 0; k < r; ++k) {
    CVec a = svd.matrixU().col(k);
    CVec b = svd.matrixV().col(k).conjugate();
    // fix the pair's joint phase on the A side; b absorbs the inverse
    for (Eigen::Index q = 0; q < a.size(); ++q) {
      double mag = std::abs(a(q));
      if (mag > 1e-8) {
        cplx ph = std::conj(a(q)) / mag;
        a *= ph;
        b *= std::conj(ph);
        break;
      }
    }
    s.basis_a.push_back(a);
    s.basis_b.push_back(b);
  }
  return s;
}

int schmidt_rank(const SchmidtForm& s, double cutoff) {
  int r = 0;
  for (Eigen::Index k = 0; k < s.coefficients.size(); ++k)
    if (s.coefficients(k) > cutoff) ++r;
  return r;
}

double hs_norm(const CMat& m) { return m.norm(); }

cplx hs_inner(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error("hs_inner: shape mismatch");
  return (a.adjoint() * b).trace();
}

PauliExpansion pauli_expand(const CMat& m) {
  if (m.rows() != 4 || m.cols() != 4)
    throw Error("pauli_expand: expected a 4 x 4 matrix");
  require_hermitian(m, "pauli_expand");
  PauliExpansion e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      e.lambda(i, j) = hs_inner(kron(pauli(i), pauli(j)), m).real() / 4.0;
  return e;
}

CMat pauli_reconstruct(const PauliExpansion& e) {
  CMat m = CMat::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m += e.lambda(i, j) * kron(pauli(i), pauli(j));
  return m;
}

std::vector<CMat> hermitian_basis(int n) {
  if (n < 1) throw Error("hermitian_basis: dimension must be positive");
  std::vector<CMat> basis;
  basis.reserve(static_cast<std::size_t>(n) * n);
  basis.push_back(CMat::Identity(n, n) / std::sqrt(static_cast<double>(n)));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      CMat x = CMat::Zero(n, n);
      x(j, k) = inv_sqrt2;
      x(k, j) = inv_sqrt2;
      basis.push_back(x);
      CMat y = CMat::Zero(n, n);
      y(j, k) = cplx(0, -inv_sqrt2);
      y(k, j) = cplx(0, inv_sqrt2);
      basis.push_back(y);
    }
  for (int l = 1; l < n; ++l) {
    CMat d = CMat::Zero(n, n);
    double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int q = 0; q < l; ++q) d(q, q) = norm;
    d(l, l) = -static_cast<double>(l) * norm;
    basis.push_back(d);
  }
  return basis;
}

RMat generalized_expand(const CMat& m, BipartiteDims dims) {
  check_bipartite(m, dims, "generalized_expand");
  require_hermitian(m, "generalized_expand");
  const auto ga = hermitian_basis(dims.na);
  const auto hb = hermitian_basis(dims.nb);
  RMat coeffs(static_cast<Eigen::Index>(ga.size()),
              static_cast<Eigen::Index>(hb.size()));
  for (std::size_t a = 0; a < ga.size(); ++a)
    for (std::size_t b = 0; b < hb.size(); ++b)
      coeffs(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          hs_inner(kron(ga[a], hb[b]), m).real();
  return coeffs;
}

CMat generalized_reconstruct(const RMat& coeffs, BipartiteDims dims) {
  if (dims.na < 1 || dims.nb < 1)
    throw Error("generalized_reconstruct: invalid subsystem dimensions");
  if (coeffs.rows() != dims.na * dims.na || coeffs.cols() != dims.nb * dims.nb)
    throw Error("generalized_reconstruct: coefficient shape mismatch");
  const auto ga = hermitian_basis(dims.na);
  const auto hb = hermitian_basis(dims.nb);
  CMat m = CMat::Zero(dims.total(), dims.total());
  for (std::size_t a = 0; a < ga.size(); ++a)
    for (std::size_t b = 0; b < hb.size(); ++b) {
      double c = coeffs(static_cast<Eigen::Index>(a),
                        static_cast<Eigen::Index>(b));
      if (c != 0.0) m += c * kron(ga[a], hb[b]);
    }
  return m;
}

std::uint64_t matrix_hash(const CMat& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](double x) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffULL;
      h *= 0x100000001b3ULL;
    }
  };
  feed(static_cast<double>(m.rows()));
  feed(static_cast<double>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      feed(m(i, j).real());
      feed(m(i, j).imag());
    }
  return h;
}

}  // namespace wk
