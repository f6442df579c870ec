#pragma once

#include <complex>

#include <Eigen/Dense>

namespace onebit {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using cdouble = std::complex<double>;
using CMatrixd = CMatrix<double>;
using CVectord = CVector<double>;
using RVectord = RVector<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Linear SNR from a value in dB.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

} // namespace onebit
