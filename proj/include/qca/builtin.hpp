#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qca/automaton.hpp"
#include "qca/dirac.hpp"

namespace qca {

// Binary rotations about the coordinate axes with {I, iσx, iσy, iσz} in 3D,
// the h1 ↔ h2 exchange with −iσx in 2D, the trivial group in 1D. Dirac
// automata use U ⊕ U.
IsotropyGroup weyl_isotropy(const WeylVariant& v, const CayleyPresentation& p, bool dirac = false);

// Transition matrices extracted from the closed forms.
AutomatonDescriptor weyl_descriptor(const WeylVariant& v);
AutomatonDescriptor dirac_descriptor(const DiracDescriptor& dd);

// weyl-1d, weyl-2d, weyl-2d-b, bcc-{a,b}-{plus,minus}.
std::optional<WeylVariant> weyl_variant_from_name(std::string_view name, double theta = 0.0);
std::vector<std::string> weyl_variant_names();

// Any Weyl name, or "dirac-" followed by a Weyl name.
AutomatonDescriptor builtin_descriptor(std::string_view name, double theta = 0.0, double mass = 0.0);
bool is_builtin_name(std::string_view name);

}  // namespace qca
