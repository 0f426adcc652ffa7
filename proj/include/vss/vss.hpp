// vss.hpp - umbrella header for the verifiable-secret-sharing toolkit
#ifndef VSS_VSS_HPP
#define VSS_VSS_HPP

#include "vss/access.hpp"
#include "vss/analysis.hpp"
#include "vss/bits.hpp"
#include "vss/control.hpp"
#include "vss/dealer.hpp"
#include "vss/field.hpp"
#include "vss/gf2.hpp"
#include "vss/protocol.hpp"
#include "vss/rng.hpp"
#include "vss/share_file.hpp"
#include "vss/sharing.hpp"
#include "vss/verhoeff.hpp"

#endif  // VSS_VSS_HPP
