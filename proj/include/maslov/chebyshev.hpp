#pragma once

#include <vector>

#include "maslov/linalg.hpp"
#include "maslov/types.hpp"

namespace maslov::cheb {

/// Integer coefficients, lowest degree first.
using Poly = std::vector<long long>;

inline Poly add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

inline Poly scale(const Poly& a, long long c) {
  Poly out = a;
  for (auto& x : out) x *= c;
  return out;
}

/// x p(x).
inline Poly shift(const Poly& a) {
  Poly out(a.size() + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i + 1] = a[i];
  return out;
}

/// T_0 = 1, T_1 = x, T_{k+1} = 2x T_k - T_{k-1}.
inline Poly first_kind(int k) {
  if (k < 0) fail(ErrorKind::InvalidArgument, "T_k needs k >= 0");
  Poly prev{1};
  if (k == 0) return prev;
  Poly cur{0, 1};
  for (int i = 1; i < k; ++i) {
    Poly next = add(scale(shift(cur), 2), scale(prev, -1));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// U_{-1} = 0, U_0 = 1, U_1 = 2x, U_{k+1} = 2x U_k - U_{k-1}.
inline Poly second_kind(int k) {
  if (k < -1) fail(ErrorKind::InvalidArgument, "U_k needs k >= -1");
  if (k == -1) return Poly{0};
  Poly prev{0};
  Poly cur{1};
  for (int i = 0; i < k; ++i) {
    Poly next = add(scale(shift(cur), 2), scale(prev, -1));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// R_k = (x + 1) U_{k-1} + T_k.
inline Poly r_poly(int k) {
  Poly u = second_kind(k - 1);
  return add(add(shift(u), u), first_kind(k));
}

template <typename Scalar>
Scalar evaluate(const Poly& p, Scalar x) {
  Scalar acc = Scalar(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Scalar(static_cast<double>(*it));
  return acc;
}

/// T_k(X) by the three-term recurrence.
inline Mat first_kind(const Mat& x, int k) {
  Mat prev = identity(x.rows());
  if (k == 0) return prev;
  Mat cur = x;
  for (int i = 1; i < k; ++i) {
    Mat next = 2.0 * x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// U_k(X) by the three-term recurrence; U_{-1} = 0.
inline Mat second_kind(const Mat& x, int k) {
  if (k == -1) return Mat::Zero(x.rows(), x.cols());
  Mat prev = Mat::Zero(x.rows(), x.cols());
  Mat cur = identity(x.rows());
  for (int i = 0; i < k; ++i) {
    Mat next = 2.0 * x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

inline Mat r_matrix(const Mat& x, int k) {
  Mat u = second_kind(x, k - 1);
  return (x + identity(x.rows())) * u + first_kind(x, k);
}

}  // namespace maslov::cheb
