#include "imcflab/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace imcf {

const char* const kTraceHeader =
    "t,area,m_H,r_inner,r_outer,H_min,H_max,angle_min,umb_l2,rho_plus,"
    "rho_minus,scalar_curv_defect,area_radius,limit_factor,grad_f2_max,"
    "tracefree_max,resid_w,resid_H,dt_last";

std::string format_trace_row(const TraceRow& r) {
  const double vals[] = {r.t,         r.area,        r.hawking,
                         r.r_inner,   r.r_outer,     r.min_H,
                         r.max_H,     r.min_angle,   r.umb_l2,
                         r.rho_plus,  r.rho_minus,   r.int_r_plus6,
                         r.area_radius, r.limit_factor, r.grad_f2_max,
                         r.max_tracefree, r.resid_w, r.resid_H,
                         r.dt_last};
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < std::size(vals); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", vals[i]);
    if (i) out += ',';
    out += buf;
  }
  return out;
}

TraceRow parse_trace_row(const std::string& line) {
  double v[19];
  std::stringstream ss(line);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',') && i < 19) v[i++] = std::stod(item);
  if (i != 19) throw Error("trace row: expected 19 columns");
  TraceRow r;
  r.t = v[0]; r.area = v[1]; r.hawking = v[2];
  r.r_inner = v[3]; r.r_outer = v[4];
  r.min_H = v[5]; r.max_H = v[6]; r.min_angle = v[7];
  r.umb_l2 = v[8]; r.rho_plus = v[9]; r.rho_minus = v[10];
  r.int_r_plus6 = v[11]; r.area_radius = v[12]; r.limit_factor = v[13];
  r.grad_f2_max = v[14]; r.max_tracefree = v[15];
  r.resid_w = v[16]; r.resid_H = v[17]; r.dt_last = v[18];
  return r;
}

FlowTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader)
    throw Error("trace file has unexpected header: " + path);
  FlowTrace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    trace.rows.push_back(parse_trace_row(line));
  }
  return trace;
}

}  // namespace imcf
