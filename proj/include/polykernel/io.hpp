#pragma once

// CSV and JSON artifacts. Floats are printed with 17 significant digits and
// JSON objects keep insertion order, so equal inputs give byte-equal files.

#include <filesystem>
#include <span>
#include <string>

#include "json.hpp"
#include "polykernel/asymptotics.hpp"
#include "polykernel/dpp.hpp"

namespace polykernel {

using Json = nlohmann::ordered_json;

// %.17g; non-finite values print as nan, inf, -inf.
std::string format_double(double x);

// Pretty-printed with two-space indent; non-finite numbers become null.
std::string dump_json(const Json& j);

// Writes to <path>.tmp.<pid> and renames over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct KernelRow {
  cplx z;
  cplx w;
  cplx value;           // K(z, w)
  double weighted_abs;  // |K(z, w)| e^{-mQ(z)/2 - mQ(w)/2}
};
std::string kernel_csv(std::span<const KernelRow> rows);

std::string configuration_csv(const PointConfiguration& c);
Json configuration_sidecar(const PointConfiguration& c);

Json to_json(cplx z);
Json to_json(const BlowupReport& r);
Json to_json(const DecayReport& r);
Json to_json(const OffDropletCheck& r);
Json to_json(const IntensityReport& r);

}  // namespace polykernel
