#pragma once

#include <cstdint>

#include "roa/model.hpp"

namespace roa {

struct BoundingBox {
  double lat_min = 12.85;
  double lat_max = 13.10;
  double lon_min = 77.45;
  double lon_max = 77.75;
};

template <typename T>
struct Range {
  T lo;
  T hi;
};

// Synthetic instance parameters. Defaults cover central Bangalore.
struct GenConfig {
  int size = 10;
  std::uint64_t seed = 0;
  BoundingBox bbox;
  double speed_kmph = 20.0;
  Range<int> capacity{4, 8};
  int completed_orders_hi = 5;
  Range<int> order_size{1, 3};
  Range<double> prepare_time{5.0, 25.0};
  Range<double> promised_slack{20.0, 50.0};
  double geofence_km = 4.0;
  int max_load = 2;
  Weights weights;
};

// Throws InvalidConfig on a degenerate bbox, empty range, k < 1 or an order
// size range that can exceed the smallest capacity.
void validate(const GenConfig& config);

double haversine_km(GeoPoint a, GeoPoint b);

// Deterministic in config. Riders and orders each draw from their own
// stream keyed by entity index.
Instance generate(const GenConfig& config);

// Divides RD^p (and GF), RT^d and WT by their own maxima. RT^p, PT and PR
// share the RT^d factor so SLA excesses keep their sign pattern. All-zero
// matrices are left untouched.
Instance normalize(const Instance& instance);

}  // namespace roa
