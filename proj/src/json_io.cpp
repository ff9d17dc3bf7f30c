#include "roa/json_io.hpp"

#include <fstream>

namespace roa {

using nlohmann::json;

namespace {

json matrix_json(const Matrix<double>& mat) {
  json rows = json::array();
  for (std::size_t r = 0; r < mat.rows(); ++r) {
    auto row = mat.row(r);
    rows.push_back(json(std::vector<double>(row.begin(), row.end())));
  }
  return rows;
}

Matrix<double> matrix_from(const json& rows, std::size_t m, std::size_t n, const char* name) {
  if (!rows.is_array() || rows.size() != m) {
    throw InvalidInput(std::string("costs.") + name + " must have one row per rider");
  }
  Matrix<double> mat(m, n);
  for (std::size_t r = 0; r < m; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n) {
      throw InvalidInput(std::string("costs.") + name + " rows must have one entry per order");
    }
    for (std::size_t c = 0; c < n; ++c) mat(r, c) = rows[r][c].get<double>();
  }
  return mat;
}

json point_json(GeoPoint p) { return {{"lat", p.lat}, {"lon", p.lon}}; }

GeoPoint point_from(const json& doc) { return {doc.at("lat").get<double>(), doc.at("lon").get<double>()}; }

}  // namespace

json to_json(const Instance& inst) {
  json riders = json::array();
  for (const Rider& r : inst.riders) {
    riders.push_back({{"id", r.id},
                      {"lat", r.location.lat},
                      {"lon", r.location.lon},
                      {"capacity", r.capacity},
                      {"completed_orders", r.completed_orders}});
  }
  json orders = json::array();
  for (const Order& o : inst.orders) {
    orders.push_back({{"id", o.id},
                      {"pickup", point_json(o.pickup)},
                      {"dropoff", point_json(o.dropoff)},
                      {"size", o.size},
                      {"prepare_time", o.prepare_time},
                      {"promised_time", o.promised_time}});
  }
  json doc;
  doc["riders"] = std::move(riders);
  doc["orders"] = std::move(orders);
  doc["costs"] = {{"pickup_dist", matrix_json(inst.costs.pickup_dist)},
                  {"pickup_time", matrix_json(inst.costs.pickup_time)},
                  {"deliver_time", matrix_json(inst.costs.deliver_time)},
                  {"wait_time", matrix_json(inst.costs.wait_time)}};
  doc["geofence"] = inst.geofence;
  doc["max_load"] = inst.max_load;
  doc["weights"] = {{"alpha", inst.weights.alpha},
                    {"beta", inst.weights.beta},
                    {"gamma", inst.weights.gamma},
                    {"delta", inst.weights.delta}};
  doc["seed"] = inst.seed;
  doc["size"] = inst.size;
  return doc;
}

Instance instance_from_json(const json& doc) {
  Instance inst;
  try {
    for (const json& r : doc.at("riders")) {
      inst.riders.push_back(Rider{r.at("id").get<int>(),
                                  {r.at("lat").get<double>(), r.at("lon").get<double>()},
                                  r.at("capacity").get<int>(),
                                  r.at("completed_orders").get<int>()});
    }
    for (const json& o : doc.at("orders")) {
      inst.orders.push_back(Order{o.at("id").get<int>(), point_from(o.at("pickup")),
                                  point_from(o.at("dropoff")), o.at("size").get<int>(),
                                  o.at("prepare_time").get<double>(),
                                  o.at("promised_time").get<double>()});
    }
    const std::size_t m = inst.riders.size();
    const std::size_t n = inst.orders.size();
    const json& costs = doc.at("costs");
    inst.costs.pickup_dist = matrix_from(costs.at("pickup_dist"), m, n, "pickup_dist");
    inst.costs.pickup_time = matrix_from(costs.at("pickup_time"), m, n, "pickup_time");
    inst.costs.deliver_time = matrix_from(costs.at("deliver_time"), m, n, "deliver_time");
    inst.costs.wait_time = matrix_from(costs.at("wait_time"), m, n, "wait_time");
    inst.geofence = doc.at("geofence").get<double>();
    inst.max_load = doc.at("max_load").get<int>();
    const json& w = doc.at("weights");
    inst.weights = {w.at("alpha").get<double>(), w.at("beta").get<double>(),
                    w.at("gamma").get<double>(), w.at("delta").get<double>()};
    inst.seed = doc.value("seed", std::uint64_t{0});
    inst.size = doc.value("size", static_cast<int>(n));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed instance: ") + e.what());
  }
  validate(inst);
  return inst;
}

json to_json(const Assignment& x) {
  json rows = json::array();
  for (std::size_t r = 0; r < x.rows(); ++r) {
    json row = json::array();
    for (auto bit : x.row(r)) row.push_back(static_cast<int>(bit));
    rows.push_back(std::move(row));
  }
  return rows;
}

Assignment assignment_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
    throw InvalidInput("assignment must be a non-empty array of rows");
  }
  Assignment x(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != x.cols()) throw InvalidInput("assignment rows differ in length");
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const int bit = rows[r][c].get<int>();
      if (bit != 0 && bit != 1) throw InvalidInput("assignment entries must be 0 or 1");
      x(r, c) = static_cast<std::uint8_t>(bit);
    }
  }
  return x;
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json(path));
}

void save_instance(const std::filesystem::path& path, const Instance& instance) {
  write_json(path, to_json(instance));
}

}  // namespace roa
