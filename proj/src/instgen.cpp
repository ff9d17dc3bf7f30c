#include "roa/instgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "roa/rng.hpp"

namespace roa {

namespace {

// Stream ids. Each entity gets its own stream so appending a field to one
// entity kind never shifts the draws of another.
constexpr std::uint64_t kRiderStream = 1ULL << 32;
constexpr std::uint64_t kOrderStream = 2ULL << 32;

constexpr double kEarthRadiusKm = 6371.0088;

double max_entry(const Matrix<double>& mat) {
  double best = 0.0;
  for (double v : mat.flat()) best = std::max(best, v);
  return best;
}

void scale(Matrix<double>& mat, double factor) {
  for (double& v : mat.flat()) v /= factor;
}

}  // namespace

void validate(const GenConfig& c) {
  auto fail = [](const char* what) { throw InvalidConfig(what); };
  if (c.size < 1) fail("size must be >= 1");
  if (!(c.bbox.lat_min < c.bbox.lat_max) || !(c.bbox.lon_min < c.bbox.lon_max)) {
    fail("bounding box is degenerate");
  }
  if (!(c.speed_kmph > 0.0)) fail("speed must be positive");
  if (c.capacity.lo < 1 || c.capacity.lo > c.capacity.hi) fail("capacity range is empty");
  if (c.completed_orders_hi < 0) fail("completed_orders range is empty");
  if (c.order_size.lo < 1 || c.order_size.lo > c.order_size.hi) fail("order size range is empty");
  if (c.order_size.hi > c.capacity.lo) fail("largest order must fit the smallest rider");
  if (c.prepare_time.lo < 0.0 || c.prepare_time.lo > c.prepare_time.hi) {
    fail("prepare_time range is empty");
  }
  if (c.promised_slack.lo <= 0.0 || c.promised_slack.lo > c.promised_slack.hi) {
    fail("promised_slack range is empty");
  }
  if (c.geofence_km < 0.0) fail("geofence must be non-negative");
  if (c.max_load < 1) fail("max_load must be >= 1");
}

double haversine_km(GeoPoint a, GeoPoint b) {
  constexpr double rad = std::numbers::pi / 180.0;
  const double dlat = (b.lat - a.lat) * rad;
  const double dlon = (b.lon - a.lon) * rad;
  const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(a.lat * rad) * std::cos(b.lat * rad) * std::sin(dlon / 2) *
                       std::sin(dlon / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

Instance generate(const GenConfig& config) {
  validate(config);
  const auto n = static_cast<std::size_t>(config.size);
  const BoundingBox& box = config.bbox;

  Instance inst;
  inst.size = config.size;
  inst.seed = config.seed;
  inst.geofence = config.geofence_km;
  inst.max_load = config.max_load;
  inst.weights = config.weights;

  auto point = [&box](Rng& rng) {
    const double lat = rng.uniform(box.lat_min, box.lat_max);
    const double lon = rng.uniform(box.lon_min, box.lon_max);
    return GeoPoint{lat, lon};
  };

  inst.riders.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(config.seed, kRiderStream + i);
    Rider r;
    r.id = static_cast<int>(i);
    r.location = point(rng);
    r.capacity = static_cast<int>(rng.uniform_int(config.capacity.lo, config.capacity.hi));
    r.completed_orders = static_cast<int>(rng.uniform_int(0, config.completed_orders_hi));
    inst.riders.push_back(r);
  }

  inst.orders.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rng rng(config.seed, kOrderStream + j);
    Order o;
    o.id = static_cast<int>(j);
    o.pickup = point(rng);
    o.dropoff = point(rng);
    o.size = static_cast<int>(rng.uniform_int(config.order_size.lo, config.order_size.hi));
    o.prepare_time = rng.uniform(config.prepare_time.lo, config.prepare_time.hi);
    o.promised_time =
        o.prepare_time + rng.uniform(config.promised_slack.lo, config.promised_slack.hi);
    inst.orders.push_back(o);
  }

  const double minutes_per_km = 60.0 / config.speed_kmph;
  PairCosts& c = inst.costs;
  c.pickup_dist = Matrix<double>(n, n);
  c.pickup_time = Matrix<double>(n, n);
  c.deliver_time = Matrix<double>(n, n);
  c.wait_time = Matrix<double>(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Order& o = inst.orders[j];
    const double trip = haversine_km(o.pickup, o.dropoff) * minutes_per_km;
    for (std::size_t i = 0; i < n; ++i) {
      const double dist = haversine_km(inst.riders[i].location, o.pickup);
      c.pickup_dist(i, j) = dist;
      c.pickup_time(i, j) = dist * minutes_per_km;
      c.deliver_time(i, j) = trip;
      c.wait_time(i, j) = std::abs(o.prepare_time - c.pickup_time(i, j));
    }
  }
  return inst;
}

Instance normalize(const Instance& instance) {
  Instance out = instance;
  PairCosts& c = out.costs;

  const double dist_scale = max_entry(c.pickup_dist);
  if (dist_scale > 0.0) {
    scale(c.pickup_dist, dist_scale);
    out.geofence /= dist_scale;
  }

  const double time_scale = max_entry(c.deliver_time);
  if (time_scale > 0.0) {
    scale(c.deliver_time, time_scale);
    scale(c.pickup_time, time_scale);
    for (Order& o : out.orders) {
      o.prepare_time /= time_scale;
      o.promised_time /= time_scale;
    }
  }

  const double wait_scale = max_entry(c.wait_time);
  if (wait_scale > 0.0) scale(c.wait_time, wait_scale);
  return out;
}

}  // namespace roa
