#include "heli/cmdfilter.hpp"

#include <stdexcept>
#include <string>

#include "heli/numerics.hpp"

namespace heli {

FftcfParams validate_fftcf_params(const FftcfParams& p) {
  const auto require_positive = [](double v, const char* name) {
    if (!(v > 0.0))
      throw std::invalid_argument(std::string("FftcfParams: ") + name + " must be > 0");
  };
  require_positive(p.eps_c, "eps_c");
  require_positive(p.a0, "a0");
  require_positive(p.a1, "a1");
  require_positive(p.b0, "b0");
  require_positive(p.b1, "b1");
  if (!(p.gamma4 > 0.0 && p.gamma4 < 1.0))
    throw std::invalid_argument("FftcfParams: gamma4 must lie in (0, 1)");
  const double lo = p.gamma4 / (2.0 - p.gamma4);
  if (!(p.gamma3 > lo && p.gamma3 < 1.0))
    throw std::invalid_argument("FftcfParams: gamma3 must lie in (gamma4/(2-gamma4), 1) = (" +
                                std::to_string(lo) + ", 1)");
  return p;
}

FftcfState fftcf_deriv(const FftcfState& st, double input, const FftcfParams& p) {
  const double e = st.x1c - input;
  FftcfState dot;
  dot.x1c = st.x2c;
  dot.x2c = (-p.a0 * e - p.a1 * sig(e, p.gamma3)
             - p.b0 * p.eps_c * st.x2c - p.b1 * sig(p.eps_c * st.x2c, p.gamma4))
            / (p.eps_c * p.eps_c);
  return dot;
}

FftcfState linear_cf_deriv(const FftcfState& st, double input, double omega_n, double zeta) {
  FftcfState dot;
  dot.x1c = st.x2c;
  dot.x2c = -2.0 * zeta * omega_n * st.x2c - omega_n * omega_n * (st.x1c - input);
  return dot;
}

}  // namespace heli
