#include "masterfield/freeprob.hpp"

namespace mf::freeprob {

std::string to_string(ProductKind k) {
  switch (k) {
    case ProductKind::tensor: return "tensor";
    case ProductKind::boolean: return "boolean";
    case ProductKind::free: return "free";
  }
  return "?";
}

ProductKind parse_product_kind(const std::string& s) {
  if (s == "tensor") return ProductKind::tensor;
  if (s == "boolean") return ProductKind::boolean;
  if (s == "free") return ProductKind::free;
  throw Error("unknown product '" + s + "' (expected free, boolean or tensor)");
}

ConjugationCumulants joint_cumulants_check_conjugation(int order) {
  if (order < 1 || order > 6) throw Error("conjugation cumulant check supports orders 1..6");
  const auto joint = product_state<Rational>(ProductKind::free, {haar_unitary_state<Rational>(), semicircular_state<Rational>()});
  const Word vwv{{0, 0}, {1, 0}, {0, 1}};
  const Word w{{1, 0}};
  ConjugationCumulants out;
  out.pass = true;
  for (int k = 1; k <= order; ++k) {
    const Rational c = cumulant_of_args(joint, std::vector<Word>(static_cast<std::size_t>(k), vwv));
    const Rational p = cumulant_of_args(joint, std::vector<Word>(static_cast<std::size_t>(k), w));
    out.conjugated.push_back(c);
    out.plain.push_back(p);
    if (k % 2 == 1 ? c != 0 : c != p) out.pass = false;
  }
  return out;
}

}  // namespace mf::freeprob
