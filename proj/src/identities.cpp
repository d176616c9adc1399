#include "skewtor/identities.hpp"

#include <stdexcept>

namespace skewtor {

const std::vector<IdentityInfo>& identity_registry() {
  // Report order is this order; keep stable (consumers diff JSON output).
  static const std::vector<IdentityInfo> reg = {
      {"DH", "dT-via-nabla-and-sigma", true, false},
      {"RICS1", "ricci-vs-riemannian-ricci", true, false},
      {"RICS2", "scalar-vs-riemannian-scalar", true, false},
      {"RICS3", "ricci-skew-equals-minus-deltaT", true, false},
      {"FIRST_BIANCHI_T", "cyclic-curvature-sum-torsion", true, false},
      {"GEN", "cyclic-difference-dT-sigma", true, false},
      {"BI1V", "last-slot-cyclic-sum", true, false},
      {"RB", "riemannian-first-bianchi", false, false},
      {"PAIR_SYM", "pair-interchange-symmetry", false, false},
      {"FOURF_A", "nablaT-alternating", false, false},
      {"FOURF_B", "pair-interchange-equivalence", false, false},
      {"FOURF_C", "dT-equals-4-lc-nablaT", false, false},
      {"SIGT", "T-contract-sigma-vanishes", true, false},
      {"EIN10", "div-deltaT", true, false},
      {"E13", "theta-forms-vs-divT2", true, false},
      {"E1", "contracted-second-bianchi", true, false},
      {"TWO_BI", "contracted-second-bianchi-lc-form", true, false},
      {"BIII", "second-bianchi-riemannian-form-criterion", false, false},
      {"BSK", "parallel-torsion-family", false, false},
      {"ZZ", "first-last-slot-exchange", false, false},
      {"ZZ1", "3dT-equals-2sigma", false, false},
      {"EIN2", "einstein-ricci-multiple", false, false},
      {"EIN6", "einstein-scalar-gradient-relation", false, false},
      {"EIN9", "scalar-plus-torsion-norm-constant", false, false},
      {"EIN8", "pair-symmetric-scalar-constant", false, false},
      {"GEIN1", "gradient-soliton-system", false, true},
      {"GEIN2", "hessian-skew-equals-deltaT", false, true},
      {"GEIN3", "ricci-equals-minus-hessian", false, true},
      {"GEIN7A", "soliton-gradient-identity-a", false, true},
      {"GEIN7B", "soliton-gradient-identity-b", false, true},
      {"GEIN8_EQ", "soliton-laplacian-identity", false, true},
      {"FFINN", "soliton-subharmonic-bound", false, true},
  };
  return reg;
}

bool is_identity_id(const std::string& id) {
  for (const auto& e : identity_registry())
    if (e.id == id) return true;
  return false;
}

const IdentityInfo& identity_info(const std::string& id) {
  for (const auto& e : identity_registry())
    if (e.id == id) return e;
  throw std::invalid_argument("unknown identity id: " + id);
}

std::vector<std::string> universal_identity_ids() {
  std::vector<std::string> out;
  for (const auto& e : identity_registry())
    if (e.universal) out.push_back(e.id);
  return out;
}

}  // namespace skewtor
