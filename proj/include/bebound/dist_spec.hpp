#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "bebound/cf_core.hpp"
#include "bebound/discrete_dist.hpp"

namespace bebound {

/// Parsed form of the distribution grammar
///   rademacher | bernoulli:p | atoms:x1,p1;x2,p2;... | normal
struct DistSpec {
  std::string text;
  bool normal = false;
  std::optional<DiscreteDist> base;  // raw (unstandardized) atoms for the discrete forms
};

/// Throws DomainError with a diagnostic naming the offending token.
DistSpec parse_dist_spec(std::string_view text);

/// What the bounds are evaluated for: a c.f. plus, for discrete bases, the
/// exact law it came from.
struct ResolvedDist {
  CharFn cf;
  std::optional<DiscreteDist> law;
};

/// Standardized iid sum S / sqrt(n) for discrete bases (`raw` = false), the
/// base law itself (`raw` = true, n ignored), or the standard normal.
ResolvedDist resolve(const DistSpec& spec, int n, bool raw = false);

}  // namespace bebound
