#include "castline/record_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace castline {

using nlohmann::json;

std::string record_to_json_line(const TrajectoryRecord& rec) {
  json j;
  j["action"] = {rec.action.theta1, rec.action.r1, rec.action.theta2,
                 rec.action.r2,     rec.action.alpha, rec.action.v_max};
  json wps = json::array();
  for (const auto& wp : rec.waypoints) wps.push_back({wp.x(), wp.y()});
  j["waypoints"] = std::move(wps);
  j["final"] = {rec.final_endpoint.x(), rec.final_endpoint.y()};
  j["duration_ms"] = rec.duration_ms;
  j["meta"] = {{"params_hash", rec.meta.params_hash},
               {"seed", rec.meta.seed},
               {"source", rec.meta.source}};
  return j.dump();
}

TrajectoryRecord record_from_json_line(const std::string& line) {
  const json j = json::parse(line);
  TrajectoryRecord rec;
  const auto& a = j.at("action");
  if (a.size() != 6) throw std::invalid_argument("record action must have 6 entries");
  rec.action = {a[0].get<Scalar>(), a[1].get<Scalar>(), a[2].get<Scalar>(),
                a[3].get<Scalar>(), a[4].get<Scalar>(), a[5].get<Scalar>()};
  for (const auto& wp : j.at("waypoints"))
    rec.waypoints.emplace_back(wp[0].get<Scalar>(), wp[1].get<Scalar>());
  rec.final_endpoint = {j.at("final")[0].get<Scalar>(), j.at("final")[1].get<Scalar>()};
  rec.duration_ms = j.at("duration_ms").get<std::int64_t>();
  const auto& meta = j.at("meta");
  rec.meta.params_hash = meta.at("params_hash").get<std::string>();
  rec.meta.seed = meta.at("seed").get<std::uint64_t>();
  rec.meta.source = meta.at("source").get<std::string>();
  return rec;
}

void write_records(const std::string& path, const std::vector<TrajectoryRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& rec : records) out << record_to_json_line(rec) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<TrajectoryRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<TrajectoryRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(record_from_json_line(line));
  }
  return out;
}

}  // namespace castline
