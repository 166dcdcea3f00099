#pragma once

#include <optional>

#include "brush/dynamics.hpp"

namespace brush::model {

// Itinerary of the ray with address s under f = pi*sinh z, read off from
// traced ray points: entry i is the U-domain of a point on the ray of
// sigma^i(s). Addresses whose tail is constantly 0_R or 0_L carry none.
std::optional<Itinerary> itinerary_of_address(const ExternalAddress& s,
                                              const dynamics::CosineParams& f,
                                              int depth);

enum class Pinched { Yes, No, Unknown };

// Whether the rays of s1 and s2 land together, decided combinatorially:
// itinerary pair matching the common-prefix / complementary-k / constant-n
// shape (n constantly 0 or -1), or membership in one of the two listed
// quadruple families for addresses without itineraries. Unlisted
// no-itinerary combinations return Unknown.
Pinched pinched(const ExternalAddress& s1, const ExternalAddress& s2,
                const dynamics::CosineParams& f, int depth);

// The two quadruple families: given a common prefix and parameters m, n >= 0,
// the four member addresses (left family starts with even/odd R-symbols,
// right family with L-symbols).
std::vector<ExternalAddress> quadruple_left(const std::vector<Symbol>& prefix,
                                            int64_t m, int64_t n);
std::vector<ExternalAddress> quadruple_right(const std::vector<Symbol>& prefix,
                                             int64_t m, int64_t n);

}  // namespace brush::model
