#include "spsw/sample_data.hpp"

#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "spsw/rng.hpp"

namespace spsw {

namespace {

const char* const kViolations[] = {
    "SPEEDING 10-19 MPH OVER LIMIT",
    "SPEEDING 20-29 MPH OVER LIMIT",
    "FAILURE TO STOP AT STOP SIGN",
    "FAILURE TO YIELD RIGHT OF WAY",
    "DRIVING WITHOUT LICENSE",
    "DRIVING WITH SUSPENDED REGISTRATION",
    "NEGLIGENT DRIVING",
    "FOLLOWING TOO CLOSELY",
    "IMPROPER LANE CHANGE",
    "RED LIGHT VIOLATION",
    "UNREGISTERED VEHICLE",
    "EXPIRED INSPECTION",
    "SEAT BELT VIOLATION",
    "USING HANDHELD PHONE WHILE DRIVING",
};

const char* const kStreets[] = {
    "MAIN ST",        "OAK AVE",        "GEORGIA AVE",   "COLESVILLE RD",
    "UNIVERSITY BLVD", "VEIRS MILL RD",  "ROCKVILLE PIKE", "FREDERICK RD",
    "CONNECTICUT AVE", "NEW HAMPSHIRE AVE", "RANDOLPH RD", "NORBECK RD",
    "MUNCASTER MILL RD", "SHADY GROVE RD", "CLOPPER RD",  "QUINCE ORCHARD RD",
    "DARNESTOWN RD",  "BRADLEY BLVD",   "RIVER RD",      "WISCONSIN AVE",
    "PINEY BRANCH RD", "LAYHILL RD",     "BEL PRE RD",    "EMORY LN",
    "FATHER HURLEY BLVD", "CRYSTAL ROCK DR", "MIDDLEBROOK RD", "WATKINS MILL RD",
};

const char* const kVehicles[] = {
    "TOYOTA CAMRY",   "TOYOTA COROLLA", "HONDA CIVIC",   "HONDA ACCORD",
    "FORD F150",      "FORD FOCUS",     "CHEVROLET MALIBU", "CHEVROLET SILVERADO",
    "NISSAN ALTIMA",  "NISSAN SENTRA",  "HYUNDAI ELANTRA", "HYUNDAI SONATA",
    "KIA OPTIMA",     "SUBARU OUTBACK", "VOLKSWAGEN JETTA", "BMW 328I",
    "MERCEDES C300",  "JEEP CHEROKEE",  "DODGE CHARGER", "GMC SIERRA",
    "MAZDA 3",        "LEXUS RX350",    "ACURA TL",      "TESLA MODEL 3",
};

const char* const kStates[] = {
    "MD", "VA", "DC", "PA", "WV", "DE", "NJ", "NY",
    "NC", "FL", "TX", "CA", "OH", "GA", "SC",
};

template <std::size_t N>
const char* pick(const char* const (&pool)[N], Rng& rng) {
  return pool[rng.below(N)];
}

std::string format(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

std::string format(const char* fmt, ...) {
  char buf[64];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

}  // namespace

Table make_sample_table(std::size_t n, std::uint64_t seed) {
  Table table(Schema({"id", "date", "time", "violation", "location",
                      "latitude", "longitude", "vehicle", "state"}));
  table.reserve(n);
  Rng rng(mix_seed({seed, 0x5a3b1eULL}));
  for (std::size_t i = 0; i < n; ++i) {
    Tuple row;
    row.reserve(9);
    row.push_back(format("C%07zu", i + 1));
    row.push_back(format("2023-%02u-%02u",
                         static_cast<unsigned>(rng.below(12) + 1),
                         static_cast<unsigned>(rng.below(28) + 1)));
    row.push_back(format("%02u:%02u", static_cast<unsigned>(rng.below(24)),
                         static_cast<unsigned>(rng.below(60))));
    row.push_back(pick(kViolations, rng));
    row.push_back(format("%u ", static_cast<unsigned>((rng.below(99) + 1)) * 100)
                  + pick(kStreets, rng));
    row.push_back(format("%.6f", 39.0 + rng.unit() * 0.4));
    row.push_back(format("%.6f", -77.5 + rng.unit() * 0.6));
    row.push_back(pick(kVehicles, rng));
    row.push_back(pick(kStates, rng));
    table.append(std::move(row));
  }
  return table;
}

}  // namespace spsw
