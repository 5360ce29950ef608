#pragma once

#include <cstddef>
#include <cstdint>

#include "spsw/table.hpp"

namespace spsw {

// Synthetic traffic-citation table for demos and experiments: n rows under
// the schema (id, date, time, violation, location, latitude, longitude,
// vehicle, state), column "id" being a synthetic primary key. Deterministic
// in (n, seed).
Table make_sample_table(std::size_t n, std::uint64_t seed);

}  // namespace spsw
