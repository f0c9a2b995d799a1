#include "modlim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "modlim/error.hpp"

namespace modlim::report {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) { row(header); }

std::string CsvWriter::quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != width_) {
    raise(Errc::kInvalidArgument, "CSV row has " + std::to_string(fields.size()) +
                                      " fields, header has " + std::to_string(width_));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ += ',';
    out_ += quote(fields[i]);
  }
  out_ += '\n';
}

namespace {

std::string yes(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string sweep_csv(const harness::SweepReport& r) {
  CsvWriter w({"eps", "h", "raw_modulus", "eps_times_modulus", "lower_bound", "gap", "allowance",
               "iterations", "converged"});
  for (const auto& row : r.rows) {
    w.row({fmt(row.eps), fmt(row.h), fmt(row.raw_modulus), fmt(row.eps_times_modulus),
           fmt(row.lower_bound), fmt(row.gap), fmt(row.allowance), std::to_string(row.iterations),
           row.converged ? "true" : "false"});
  }
  return w.str();
}

std::string sweep_summary(const harness::SweepReport& r, double bound) {
  std::string s;
  s += "extrapolated_limit " + fmt(r.extrapolated_limit) + "\n";
  s += "limit_gap " + fmt(r.limit_gap) + "\n";
  s += "observed_rate " + fmt(r.observed_rate) + "\n";
  s += "target " + fmt(r.target) + "\n";
  s += std::string(r.target > 0.0 ? "relative_error " : "absolute_error ") +
       fmt(r.relative_error) + "\n";
  s += "bound " + fmt(bound) + "\n";
  s += "within_bound " + yes(r.relative_error <= bound) + "\n";
  s += "rows_above_vertical " + yes(r.rows_above_vertical) + "\n";
  s += "monotone_tail " + yes(r.monotone_tail) + "\n";
  s += "complete " + yes(r.complete) + "\n";
  return s;
}

std::string eta_csv(const harness::EtaReport& r) {
  CsvWriter w({"eta", "restricted_modulus", "lower_bound", "gap", "riemann_bound", "iterations"});
  for (const auto& row : r.rows) {
    w.row({fmt(row.eta), fmt(row.restricted_modulus), fmt(row.lower_bound), fmt(row.gap),
           fmt(row.riemann_bound), std::to_string(row.iterations)});
  }
  return w.str();
}

std::string eta_summary(const harness::EtaReport& r) {
  std::string s;
  s += "h " + fmt(r.h) + "\n";
  s += "limit_estimate " + fmt(r.limit_estimate) + "\n";
  s += "monotone " + yes(r.monotone) + "\n";
  s += "below_riemann " + yes(r.below_riemann) + "\n";
  return s;
}

std::string sandwich_summary(const harness::SandwichVerdict& v) {
  std::string s;
  s += "vertical " + fmt(v.vertical) + "\n";
  s += "eps_limit " + fmt(v.eps_limit) + "\n";
  s += "eta_limit " + fmt(v.eta_limit) + "\n";
  s += "tol_chain " + fmt(v.tol_chain) + "\n";
  s += "vertical_le_eps_limit " + yes(v.lower_holds) + "\n";
  s += "eps_limit_le_eta_limit " + yes(v.upper_holds) + "\n";
  s += "eta_monotone " + yes(v.eta_monotone) + "\n";
  s += "verdict " + std::string(v.holds() ? "holds" : "violated") + "\n";
  return s;
}

std::string lsc_csv(const harness::LscReport& r) {
  CsvWriter w({"n", "integral", "error", "knots"});
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    w.row({fmt(r.rows[i].n), fmt(r.rows[i].integral), fmt(r.rows[i].error),
           std::to_string(r.approximants[i].breakpoints().size())});
  }
  return w.str();
}

// ---------------------------------------------------------------------------

namespace {

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<Series>& series,
                           bool log_x, std::optional<double> reference_y) {
  const double W = 640, H = 420, L = 70, R = 20, T = 40, B = 55;
  auto tx = [&](double x) { return log_x ? std::log2(x) : x; };

  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const Series& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_x && !(s.x[i] > 0.0)) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (reference_y) {
    y0 = std::min(y0, *reference_y);
    y1 = std::max(y1, *reference_y);
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.06 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  auto px = [&](double x) { return L + (tx(x) - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
       "font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt(W / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
       escape_xml(title) + "</text>\n";
  s += "<line x1=\"" + fmt(L) + "\" y1=\"" + fmt(H - B) + "\" x2=\"" + fmt(W - R) + "\" y2=\"" +
       fmt(H - B) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + fmt(L) + "\" y1=\"" + fmt(T) + "\" x2=\"" + fmt(L) + "\" y2=\"" +
       fmt(H - B) + "\" stroke=\"black\"/>\n";

  // x ticks: powers of two on a log axis, five even ticks otherwise.
  std::vector<double> xt;
  if (log_x) {
    for (double e = std::floor(x0); e <= std::ceil(x1); e += 1.0) {
      if (e >= x0 - 1e-9 && e <= x1 + 1e-9) xt.push_back(std::exp2(e));
    }
  } else {
    for (int k = 0; k <= 4; ++k) xt.push_back(x0 + (x1 - x0) * k / 4);
  }
  for (double x : xt) {
    s += "<line x1=\"" + fmt(px(x)) + "\" y1=\"" + fmt(H - B) + "\" x2=\"" + fmt(px(x)) +
         "\" y2=\"" + fmt(H - B + 5) + "\" stroke=\"black\"/>\n";
    const std::string label = log_x ? "2^" + fmt(std::log2(x)) : fmt(x);
    s += "<text x=\"" + fmt(px(x)) + "\" y=\"" + fmt(H - B + 18) + "\" text-anchor=\"middle\">" +
         escape_xml(label) + "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double y = y0 + (y1 - y0) * k / 4;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", y);
    s += "<line x1=\"" + fmt(L - 5) + "\" y1=\"" + fmt(py(y)) + "\" x2=\"" + fmt(L) + "\" y2=\"" +
         fmt(py(y)) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(L - 8) + "\" y=\"" + fmt(py(y) + 4) + "\" text-anchor=\"end\">" +
         buf + "</text>\n";
  }
  s += "<text x=\"" + fmt((L + W - R) / 2) + "\" y=\"" + fmt(H - 12) +
       "\" text-anchor=\"middle\">" + escape_xml(x_label) + "</text>\n";
  s += "<text x=\"16\" y=\"" + fmt((T + H - B) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
       fmt((T + H - B) / 2) + ")\">" + escape_xml(y_label) + "</text>\n";

  if (reference_y) {
    s += "<line x1=\"" + fmt(L) + "\" y1=\"" + fmt(py(*reference_y)) + "\" x2=\"" + fmt(W - R) +
         "\" y2=\"" + fmt(py(*reference_y)) + "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& se = series[k];
    const char* colour = kPalette[k % 5];
    std::string pts;
    for (std::size_t i = 0; i < se.x.size(); ++i) {
      if (log_x && !(se.x[i] > 0.0)) continue;
      pts += fmt(px(se.x[i])) + "," + fmt(py(se.y[i])) + " ";
    }
    s += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"2\" points=\"" +
         pts + "\"/>\n";
    for (std::size_t i = 0; i < se.x.size(); ++i) {
      if (log_x && !(se.x[i] > 0.0)) continue;
      s += "<circle cx=\"" + fmt(px(se.x[i])) + "\" cy=\"" + fmt(py(se.y[i])) + "\" r=\"3\" fill=\"" +
           colour + "\"/>\n";
    }
    s += "<text x=\"" + fmt(W - R - 4) + "\" y=\"" + fmt(T + 14 + 16 * k) + "\" text-anchor=\"end\" fill=\"" +
         colour + "\">" + escape_xml(se.label) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

nlohmann::json manifest(const std::string& command, const nlohmann::json& config,
                        std::uint64_t seed) {
  nlohmann::json m;
  m["toolkit"] = "modlim";
  m["version"] = MODLIM_VERSION;
  m["command"] = command;
  m["seed"] = seed;
  m["config_hash"] = hex64(fnv1a(config.dump()));
  m["config"] = config;
  return m;
}

}  // namespace modlim::report
