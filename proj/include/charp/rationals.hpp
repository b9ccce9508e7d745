#pragma once

#include <boost/rational.hpp>
#include <string>

#include "charp/errors.hpp"

namespace charp {

// Exact rationals for differents and thicknesses.
using Rat = boost::rational<long long>;

// Canonical form "a/b" with b > 0, reduced.
std::string rat_to_string(const Rat& r);

// Accepts "a" or "a/b".
Rat rat_from_string(const std::string& s);

}  // namespace charp
