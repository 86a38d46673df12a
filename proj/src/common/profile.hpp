#pragma once

#include <functional>
#include <string>
#include <vector>

namespace zh {

// A smooth scalar function of one variable with optional analytic
// derivatives. Missing derivatives fall back to fourth-order central
// differences.
class Profile {
 public:
  using Fn = std::function<double(double)>;

  Profile();
  Profile(Fn f, Fn df = {}, Fn d2f = {}, std::string name = "custom");

  static Profile constant(double c);
  static Profile neg_log_sin();
  static Profile log_sin();
  static Profile linear(double c0, double c1);
  // c + sum_j amp[j] * sin((j+1) pi (x - a)/(b - a) + phase[j])
  static Profile trig(double c, std::vector<double> amp, std::vector<double> phase, double a, double b);

  double operator()(double x) const { return f_(x); }
  double d1(double x) const;
  double d2(double x) const;
  bool has_analytic_derivatives() const { return static_cast<bool>(df_) && static_cast<bool>(d2f_); }
  const std::string& name() const { return name_; }

  Profile shifted(double c) const;
  Profile without_derivatives() const;

 private:
  Fn f_;
  Fn df_;
  Fn d2f_;
  std::string name_;
};

}  // namespace zh
