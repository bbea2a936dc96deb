#include "polykernel/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace polykernel {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void dump_string(std::ostringstream& os, const std::string& s) {
  // nlohmann handles escaping; reuse it for strings only.
  os << Json(s).dump();
}

void dump_value(std::ostringstream& os, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        dump_string(os, it.key());
        os << ": ";
        dump_value(os, it.value(), depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        dump_value(os, v, depth + 1);
      }
      os << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_double(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::ostringstream os;
  dump_value(os, j, 0);
  os << "\n";
  return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw ConfigError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ConfigError("cannot rename to " + path.string() + ": " + ec.message());
  }
}

std::string kernel_csv(std::span<const KernelRow> rows) {
  std::ostringstream os;
  os << "re_z,im_z,re_w,im_w,re_K,im_K,weighted_abs\n";
  for (const auto& r : rows) {
    os << format_double(r.z.real()) << ',' << format_double(r.z.imag()) << ',' << format_double(r.w.real()) << ','
       << format_double(r.w.imag()) << ',' << format_double(r.value.real()) << ',' << format_double(r.value.imag())
       << ',' << format_double(r.weighted_abs) << '\n';
  }
  return os.str();
}

std::string configuration_csv(const PointConfiguration& c) {
  std::ostringstream os;
  os << "re,im\n";
  for (cplx z : c.points) os << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
  return os.str();
}

Json configuration_sidecar(const PointConfiguration& c) {
  Json j;
  j["seed"] = c.seed;
  j["q"] = c.spec.q;
  j["n"] = c.spec.n;
  j["m"] = c.spec.m;
  j["weight"] = c.weight;
  j["proposals"] = c.proposals;
  return j;
}

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const BlowupReport& r) {
  Json j;
  j["weight"] = r.weight;
  j["z0"] = to_json(r.z0);
  j["q"] = r.q;
  j["grid_radius"] = r.grid.radius;
  j["points_per_axis"] = r.grid.points_per_axis;
  Json runs = Json::array();
  for (const auto& run : r.runs) {
    Json jr;
    jr["m"] = run.m;
    jr["n"] = run.n;
    jr["sup_error"] = run.sup_error;
    jr["samples"] = run.samples.size();
    runs.push_back(jr);
  }
  j["runs"] = runs;
  j["slope"] = r.fit.slope;
  j["degenerate"] = r.fit.degenerate;
  return j;
}

Json to_json(const DecayReport& r) {
  Json j;
  j["weight"] = r.weight;
  j["z0"] = to_json(r.z0);
  j["q"] = r.q;
  j["r0"] = r.r0;
  Json dirs = Json::array();
  for (cplx d : r.directions) dirs.push_back(to_json(d));
  j["directions"] = dirs;
  j["microscopic"] = r.microscopic;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json jr;
    jr["m"] = row.m;
    jr["n"] = row.n;
    jr["beta"] = row.beta;
    jr["beta_over_sqrt_m"] = row.beta_over_sqrt_m;
    jr["separations"] = row.separations;
    jr["log_values"] = row.log_values;
    rows.push_back(jr);
  }
  j["rows"] = rows;
  return j;
}

Json to_json(const OffDropletCheck& r) {
  Json j;
  j["log_bound"] = r.log_bound;
  j["worst_margin"] = r.worst_margin;
  j["passed"] = r.passed;
  Json pts = Json::array();
  for (const auto& p : r.points) {
    Json jp;
    jp["radius"] = p.radius;
    jp["log_intensity"] = p.log_intensity;
    jp["margin"] = p.margin;
    pts.push_back(jp);
  }
  j["points"] = pts;
  return j;
}

Json to_json(const IntensityReport& r) {
  Json j;
  j["samples"] = r.samples;
  j["mean_exterior"] = r.mean_exterior;
  j["max_abs_z"] = r.max_abs_z;
  Json bins = Json::array();
  for (const auto& b : r.bins) {
    Json jb;
    jb["r_lo"] = b.r_lo;
    jb["r_hi"] = b.r_hi;
    jb["mean_count"] = b.mean_count;
    jb["std_count"] = b.std_count;
    jb["predicted"] = b.predicted;
    jb["z_score"] = b.z_score;
    bins.push_back(jb);
  }
  j["bins"] = bins;
  return j;
}

}  // namespace polykernel
