#pragma once

// Scalar fields, polytopes, orthonormal frames and affine flats over R or C.
//
// Vectors are Eigen complex vectors regardless of field; for the real field
// every imaginary part is zero.  The Hermitian product is linear in its first
// argument: inner(x, y) = sum_j x_j * conj(y_j).  Serialization uses the
// realified layout where complex coordinate j occupies real slots (2j, 2j+1).

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ktrans/error.hpp"

namespace ktrans {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

enum class Field { real, complex };

constexpr int real_dim(Field f) { return f == Field::real ? 1 : 2; }

inline std::string field_tag(Field f) { return f == Field::real ? "R" : "C"; }

namespace tol {
inline constexpr double orthonormal = 1e-10;
inline constexpr double rank = 1e-9;
inline constexpr double slice = 1e-9;
inline constexpr double feasibility = 1e-8;
inline constexpr double certificate = 1e-10;
inline constexpr double stab = 1e-6;
}  // namespace tol

/// Hermitian product, linear in the first argument.
inline cplx inner(const CVec& x, const CVec& y) { return y.dot(x); }

/// Real part of the Hermitian product, i.e. the Euclidean product of the realified vectors.
inline double inner_real(const CVec& x, const CVec& y) { return inner(x, y).real(); }

inline RVec realify(const CVec& v, Field f) {
  if (f == Field::real) return v.real();
  RVec out(2 * v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    out(2 * j) = v(j).real();
    out(2 * j + 1) = v(j).imag();
  }
  return out;
}

inline CVec complexify(const RVec& r, Field f) {
  if (f == Field::real) return r.cast<cplx>();
  if (r.size() % 2 != 0)
    throw Error(Errc::dimension_mismatch, "complex vector needs an even number of reals");
  CVec out(r.size() / 2);
  for (Eigen::Index j = 0; j < out.size(); ++j) out(j) = cplx(r(2 * j), r(2 * j + 1));
  return out;
}

/// Complex structure on realified coordinates: (x, y) -> (-y, x) blockwise.
inline RVec apply_j(const RVec& r) {
  RVec out(r.size());
  for (Eigen::Index j = 0; j + 1 < r.size(); j += 2) {
    out(j) = -r(j + 1);
    out(j + 1) = r(j);
  }
  return out;
}

inline bool all_finite(const CVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
  return true;
}

inline bool is_real_vector(const CVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i).imag() != 0.0) return false;
  return true;
}

inline void check_field_vector(const CVec& v, Field f, const char* what) {
  if (!all_finite(v)) throw Error(Errc::invalid_input, std::string(what) + " has non-finite entries");
  if (f == Field::real && !is_real_vector(v))
    throw Error(Errc::field_mismatch, std::string(what) + " has imaginary parts over the real field");
}

// ---------------------------------------------------------------------------

/// Compact convex set given by a nonempty vertex list (V-representation).
class Polytope {
 public:
  Polytope(Field field, std::vector<CVec> vertices) : field_(field), vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw Error(Errc::invalid_input, "polytope needs at least one vertex");
    dim_ = static_cast<int>(vertices_.front().size());
    for (const auto& v : vertices_) {
      if (v.size() != dim_) throw Error(Errc::dimension_mismatch, "polytope vertices differ in dimension");
      check_field_vector(v, field_, "vertex");
    }
  }

  static Polytope singleton(Field field, CVec point) { return Polytope(field, {std::move(point)}); }

  Field field() const { return field_; }
  int dim() const { return dim_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<CVec>& vertices() const { return vertices_; }
  const CVec& vertex(std::size_t i) const { return vertices_[i]; }

  bool operator==(const Polytope& o) const {
    if (field_ != o.field_ || dim_ != o.dim_ || vertices_.size() != o.vertices_.size()) return false;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (vertices_[i] != o.vertices_[i]) return false;
    return true;
  }

 private:
  Field field_;
  int dim_ = 0;
  std::vector<CVec> vertices_;
};

using Family = std::vector<Polytope>;

inline void check_family(const Family& fam, const char* what = "family") {
  if (fam.empty()) throw Error(Errc::invalid_input, std::string(what) + " is empty");
  for (const auto& p : fam) {
    if (p.field() != fam.front().field()) throw Error(Errc::field_mismatch, std::string(what) + " mixes fields");
    if (p.dim() != fam.front().dim())
      throw Error(Errc::dimension_mismatch, std::string(what) + " mixes ambient dimensions");
  }
}

/// F-orthonormal n-frame, stored as the columns of a matrix.
class Frame {
 public:
  Frame(Field field, CMat vectors) : field_(field), vectors_(std::move(vectors)) {
    for (Eigen::Index c = 0; c < vectors_.cols(); ++c) check_field_vector(vectors_.col(c), field_, "frame vector");
    if (gram_defect() > tol::orthonormal)
      throw Error(Errc::invariant_violation, "frame is not orthonormal");
  }

  Field field() const { return field_; }
  int dim() const { return static_cast<int>(vectors_.rows()); }
  int size() const { return static_cast<int>(vectors_.cols()); }
  const CMat& matrix() const { return vectors_; }
  CVec vector(int i) const { return vectors_.col(i); }

  /// max |<v_i, v_j> - delta_ij|
  double gram_defect() const {
    if (vectors_.cols() == 0) return 0.0;
    CMat g = vectors_.adjoint() * vectors_;
    return (g - CMat::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
  }

 private:
  Field field_;
  CMat vectors_;
};

/// Orthonormalizes columns by twice-iterated modified Gram-Schmidt.
/// Throws DependentInput when the columns are numerically dependent.
inline Frame orthonormalize(const CMat& vs, Field field) {
  const Eigen::Index n = vs.cols();
  if (n > 0) {
    Eigen::JacobiSVD<CMat> svd(vs);
    const auto& s = svd.singularValues();
    if (n > vs.rows() || s(n - 1) <= tol::rank * std::max(1.0, s(0)))
      throw Error(Errc::dependent_input, "vectors are numerically dependent");
  }
  CMat q = vs;
  for (Eigen::Index c = 0; c < n; ++c) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index p = 0; p < c; ++p) q.col(c) -= inner(q.col(c), q.col(p)) * q.col(p);
    const double nrm = q.col(c).norm();
    if (nrm <= tol::rank) throw Error(Errc::dependent_input, "vectors are numerically dependent");
    q.col(c) /= nrm;
  }
  if (field == Field::real) q = q.real().cast<cplx>();
  return Frame(field, std::move(q));
}

inline Frame orthonormalize(const std::vector<CVec>& vs, Field field) {
  if (vs.empty()) return Frame(field, CMat(0, 0));
  CMat m(vs.front().size(), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].size() != m.rows()) throw Error(Errc::dimension_mismatch, "vectors differ in dimension");
    m.col(static_cast<Eigen::Index>(i)) = vs[i];
  }
  return orthonormalize(m, field);
}

/// Orthonormal basis of the F-orthogonal complement of span(q); q must have orthonormal columns.
inline CMat orthogonal_complement(const CMat& q, int dim) {
  CMat basis = q;
  std::vector<CVec> extra;
  while (basis.cols() < dim) {
    // greedy: the coordinate axis with the largest residual
    CVec v;
    double best = -1.0;
    for (int e = 0; e < dim; ++e) {
      CVec cand = CVec::Unit(dim, e);
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index p = 0; p < basis.cols(); ++p) cand -= inner(cand, basis.col(p)) * basis.col(p);
      if (cand.norm() > best) {
        best = cand.norm();
        v = cand;
      }
    }
    const double nrm = v.norm();
    if (nrm < 1e-8) break;
    v /= nrm;
    basis.conservativeResize(dim, basis.cols() + 1);
    basis.col(basis.cols() - 1) = v;
    extra.push_back(v);
  }
  CMat out(dim, static_cast<Eigen::Index>(extra.size()));
  for (std::size_t i = 0; i < extra.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = extra[i];
  return out;
}

/// Coefficients (<x, v_1>, ..., <x, v_n>) of the orthogonal projection onto span(frame).
inline CVec project_to_frame(const Frame& fr, const CVec& x) {
  if (x.size() != fr.dim()) throw Error(Errc::dimension_mismatch, "vector and frame differ in dimension");
  return fr.matrix().adjoint() * x;
}

inline CVec reconstruct(const Frame& fr, const CVec& coeffs) {
  if (coeffs.size() != fr.size()) throw Error(Errc::dimension_mismatch, "coefficient count differs from frame size");
  return fr.matrix() * coeffs;
}

// ---------------------------------------------------------------------------

/// k-flat: basepoint plus an orthonormal F-basis of its direction space.
class AffineFlat {
 public:
  AffineFlat(Field field, CVec base, CMat dirs) : field_(field), base_(std::move(base)), dirs_(std::move(dirs)) {
    check_field_vector(base_, field_, "flat basepoint");
    if (dirs_.cols() > 0 && dirs_.rows() != base_.size())
      throw Error(Errc::dimension_mismatch, "flat directions differ in dimension from basepoint");
    if (dirs_.cols() == 0) dirs_.resize(base_.size(), 0);
    Frame check(field_, dirs_);
    (void)check;
  }

  static AffineFlat point(Field field, CVec p) {
    const auto d = p.size();
    return AffineFlat(field, std::move(p), CMat(d, 0));
  }

  Field field() const { return field_; }
  int dim() const { return static_cast<int>(base_.size()); }
  int k() const { return static_cast<int>(dirs_.cols()); }
  const CVec& base() const { return base_; }
  const CMat& dirs() const { return dirs_; }

  /// Flat coordinates psi(x) = (<x - base, u_j>)_j of a point.
  CVec coordinates(const CVec& x) const { return dirs_.adjoint() * (x - base_); }
  CVec at(const CVec& coords) const { return base_ + dirs_ * coords; }

  CVec normal_component(const CVec& x) const {
    const CVec rel = x - base_;
    return rel - dirs_ * (dirs_.adjoint() * rel);
  }
  double distance(const CVec& x) const { return normal_component(x).norm(); }

  /// Max residual of the real direction span under J (zero by construction for complex columns).
  double j_closure_defect() const {
    if (field_ == Field::real || dirs_.cols() == 0) return 0.0;
    RMat real_dirs(2 * dim(), 2 * k());
    for (int c = 0; c < k(); ++c) {
      real_dirs.col(2 * c) = realify(dirs_.col(c), field_);
      real_dirs.col(2 * c + 1) = realify(cplx(0, 1) * dirs_.col(c), field_);
    }
    double worst = 0.0;
    for (int c = 0; c < k(); ++c) {
      RVec jv = apply_j(realify(dirs_.col(c), field_));
      RVec res = jv - real_dirs * (real_dirs.transpose() * jv);
      worst = std::max(worst, res.norm());
    }
    return worst;
  }

 private:
  Field field_;
  CVec base_;
  CMat dirs_;
};

inline bool flat_contains_point(const AffineFlat& fl, const CVec& x, double tolerance) {
  if (x.size() != fl.dim()) throw Error(Errc::dimension_mismatch, "point and flat differ in dimension");
  return fl.distance(x) <= tolerance;
}

// ---------------------------------------------------------------------------
// Lifting into the slice F^d + e_{d+1}.

inline CVec lift(const CVec& v) {
  CVec out(v.size() + 1);
  out.head(v.size()) = v;
  out(v.size()) = 1.0;
  return out;
}

inline Polytope lift_to_slice(const Polytope& p) {
  std::vector<CVec> vs;
  vs.reserve(p.size());
  for (const auto& v : p.vertices()) vs.push_back(lift(v));
  return Polytope(p.field(), std::move(vs));
}

inline Polytope delift(const Polytope& p) {
  std::vector<CVec> vs;
  vs.reserve(p.size());
  for (const auto& v : p.vertices()) vs.push_back(v.head(v.size() - 1));
  return Polytope(p.field(), std::move(vs));
}

/// The k-flat {x in F^d : <(x,1), v_i> = 0 for all i} cut out by a (d-k)-frame in F^{d+1}.
inline AffineFlat flat_from_orthogonal_frame(const Frame& fr) {
  const int n = fr.dim();
  const int d = n - 1;
  const CMat& v = fr.matrix();
  const CVec e = CVec::Unit(n, d);
  const CVec pe = v * (v.adjoint() * e);
  const double last = 1.0 - pe.squaredNorm();
  if (last <= tol::slice) throw Error(Errc::slice_degenerate, "e_{d+1} lies in the frame span");
  const CVec w = (e - pe) / last;

  CMat vq(n, v.cols() + 1);
  vq.leftCols(v.cols()) = v;
  vq.col(v.cols()) = (e - pe) / std::sqrt(last);
  CMat comp = orthogonal_complement(vq, n);
  CMat dirs = comp.topRows(d);
  if (fr.field() == Field::real) dirs = dirs.real().cast<cplx>();
  CVec base = w.head(d);
  if (fr.field() == Field::real) base = base.real().cast<cplx>();
  return AffineFlat(fr.field(), std::move(base), std::move(dirs));
}

/// Orthonormal (d-k)-frame V in F^{d+1} with V-perp cutting out the lifted flat.
inline Frame orthogonal_frame_of_flat(const AffineFlat& fl) {
  const int d = fl.dim();
  CMat span(d + 1, fl.k() + 1);
  span.col(0) = lift(fl.base());
  for (int c = 0; c < fl.k(); ++c) {
    span.col(c + 1).head(d) = fl.dirs().col(c);
    span(d, c + 1) = 0.0;
  }
  Frame q = orthonormalize(span, fl.field());
  CMat comp = orthogonal_complement(q.matrix(), d + 1);
  if (fl.field() == Field::real) comp = comp.real().cast<cplx>();
  return Frame(fl.field(), std::move(comp));
}

}  // namespace ktrans
