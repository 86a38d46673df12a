#include "common/profile.hpp"

#include <cmath>
#include <utility>

namespace zh {

namespace {
constexpr double kStep1 = 1e-3;
constexpr double kStep2 = 2e-3;
}  // namespace

Profile::Profile() : Profile(Profile::constant(0.0)) {}

Profile::Profile(Fn f, Fn df, Fn d2f, std::string name)
    : f_(std::move(f)), df_(std::move(df)), d2f_(std::move(d2f)), name_(std::move(name)) {}

Profile Profile::constant(double c) {
  return Profile([c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; },
                 "constant");
}

Profile Profile::neg_log_sin() {
  return Profile([](double v) { return -std::log(std::sin(v)); },
                 [](double v) { return -std::cos(v) / std::sin(v); },
                 [](double v) {
                   const double s = std::sin(v);
                   return 1.0 / (s * s);
                 },
                 "neg_log_sin");
}

Profile Profile::log_sin() {
  return Profile([](double v) { return std::log(std::sin(v)); },
                 [](double v) { return std::cos(v) / std::sin(v); },
                 [](double v) {
                   const double s = std::sin(v);
                   return -1.0 / (s * s);
                 },
                 "log_sin");
}

Profile Profile::linear(double c0, double c1) {
  return Profile([c0, c1](double x) { return c0 + c1 * x; }, [c1](double) { return c1; },
                 [](double) { return 0.0; }, "linear");
}

Profile Profile::trig(double c, std::vector<double> amp, std::vector<double> phase, double a, double b) {
  const double k = M_PI / (b - a);
  auto f = [=](double x) {
    double s = c;
    for (std::size_t j = 0; j < amp.size(); ++j) s += amp[j] * std::sin((j + 1) * k * (x - a) + phase[j]);
    return s;
  };
  auto df = [=](double x) {
    double s = 0.0;
    for (std::size_t j = 0; j < amp.size(); ++j)
      s += amp[j] * (j + 1) * k * std::cos((j + 1) * k * (x - a) + phase[j]);
    return s;
  };
  auto d2f = [=](double x) {
    double s = 0.0;
    for (std::size_t j = 0; j < amp.size(); ++j) {
      const double w = (j + 1) * k;
      s -= amp[j] * w * w * std::sin(w * (x - a) + phase[j]);
    }
    return s;
  };
  return Profile(f, df, d2f, "trig");
}

double Profile::d1(double x) const {
  if (df_) return df_(x);
  const double h = kStep1 * std::max(1.0, std::abs(x));
  return (-f_(x + 2 * h) + 8 * f_(x + h) - 8 * f_(x - h) + f_(x - 2 * h)) / (12 * h);
}

double Profile::d2(double x) const {
  if (d2f_) return d2f_(x);
  const double h = kStep2 * std::max(1.0, std::abs(x));
  return (-f_(x + 2 * h) + 16 * f_(x + h) - 30 * f_(x) + 16 * f_(x - h) - f_(x - 2 * h)) / (12 * h * h);
}

Profile Profile::shifted(double c) const {
  Fn f = f_;
  return Profile([f, c](double x) { return f(x) + c; }, df_, d2f_, name_);
}

Profile Profile::without_derivatives() const { return Profile(f_, {}, {}, name_ + "_fd"); }

}  // namespace zh
