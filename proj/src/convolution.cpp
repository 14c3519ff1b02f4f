#include "mellin/convolution.hpp"

#include "mellin/error.hpp"

namespace mellin {

std::string_view to_string(Kind k) { return k == Kind::Product ? "Product" : "Ratio"; }

Kind kind_from_string(std::string_view name) {
  if (name == "Product" || name == "product") return Kind::Product;
  if (name == "Ratio" || name == "ratio") return Kind::Ratio;
  throw Error(ErrorKind::InvalidModel, "unknown kind '" + std::string(name) + "'");
}

void ConvolutionSpec::validate() const {
  f1.validate();
  f2.validate();
}

GammaExpr convolved_transform(const ConvolutionSpec& spec) {
  spec.validate();
  const GammaExpr m1 = mellin_transform(spec.f1);
  const GammaExpr m2 = mellin_transform(spec.f2);
  return spec.kind == Kind::Product ? product_convolve(m1, m2) : ratio_convolve(m2, m1);
}

double support_upper(const ConvolutionSpec& spec) {
  if (spec.kind == Kind::Ratio) return kInf;
  return spec.f1.support_upper() * spec.f2.support_upper();
}

}  // namespace mellin
