#pragma once

#include <string>

#include <json.hpp>

#include "twistvol/angles.hpp"
#include "twistvol/partition.hpp"
#include "twistvol/solver.hpp"

namespace twistvol {

using ojson = nlohmann::ordered_json;

ojson triangulation_to_json(const Triangulation& tri);

ojson angles_to_json(const AngleVector& a);
AngleVector angles_from_json(const ojson& j);

ojson complete_structure_to_json(const CompleteStructure& cs);
CompleteStructure complete_structure_from_json(const ojson& j);

ojson partition_result_to_json(const TwistKnotSpec& spec, const PartitionResult& r);

// CSV columns of the sweep output, without a trailing newline.
inline constexpr const char* kSweepCsvHeader =
    "n,hbar,b,points,halfwidth,abs_Jfrak,scaled_log,volume,volume_gap,quad_err";
std::string partition_csv_row(const TwistKnotSpec& spec, const PartitionResult& r);

}  // namespace twistvol
