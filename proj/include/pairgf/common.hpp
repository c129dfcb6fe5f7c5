#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pairgf {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex I{0.0, 1.0};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::hypot(a[0], a[1], a[2]); }

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Error hierarchy. Everything thrown by the library derives from Error.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
  public:
    using Error::Error;
};

class PoleError : public DomainError {
  public:
    using DomainError::DomainError;
};

class NumericalError : public Error {
  public:
    using Error::Error;
};

class NonConvergence : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

class WronskianViolation : public NumericalError {
  public:
    WronskianViolation(const std::string& what, double residual)
        : NumericalError(what), residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_;
};

class ToleranceNotMet : public NumericalError {
  public:
    ToleranceNotMet(const std::string& what, Complex value, double err_est)
        : NumericalError(what), value_(value), err_est_(err_est) {}
    Complex value() const { return value_; }
    double err_est() const { return err_est_; }

  private:
    Complex value_;
    double err_est_;
};
using QuadratureFailure = ToleranceNotMet;

class SingularSystem : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

class CoincidentArguments : public DomainError {
  public:
    using DomainError::DomainError;
};

class CutoffRequired : public DomainError {
  public:
    using DomainError::DomainError;
};

}  // namespace pairgf
