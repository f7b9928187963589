#include "crinv/fourier.hpp"

namespace crinv::fourier {

std::string to_string(const Frequency& xi) {
  std::string s = "(";
  for (std::size_t k = 0; k < xi.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(xi[k]);
  }
  return s + ")";
}

}  // namespace crinv::fourier
