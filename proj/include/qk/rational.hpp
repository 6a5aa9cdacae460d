#pragma once

#include <gmpxx.h>
#include <string>

namespace qk {

using Rat = mpq_class;

// Parses "p/q" or "p" (arbitrary precision, canonicalized).
Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& r);

} // namespace qk
