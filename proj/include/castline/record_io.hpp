#pragma once

#include <string>
#include <vector>

#include "castline/cablesim.hpp"

namespace castline {

/// One JSON object per record:
/// {"action":[theta1,r1,theta2,r2,alpha,v_max],"waypoints":[[x,y],...],
///  "final":[x,y],"duration_ms":N,"meta":{...}}; numbers round-trip exactly.
std::string record_to_json_line(const TrajectoryRecord& rec);
TrajectoryRecord record_from_json_line(const std::string& line);

void write_records(const std::string& path, const std::vector<TrajectoryRecord>& records);
std::vector<TrajectoryRecord> read_records(const std::string& path);

}  // namespace castline
