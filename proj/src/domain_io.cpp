#include "modlim/domain_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "modlim/error.hpp"

namespace modlim::io {

using nlohmann::json;

namespace {

std::string location(std::string_view text, std::size_t byte) {
  // nlohmann reports a 1-based byte count just past the offending character.
  std::size_t line = 1, col = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    // Drop the library prefix "[json.exception.parse_error.101] parse error at ...: ".
    if (auto pos = msg.rfind(": "); pos != std::string::npos) msg = msg.substr(pos + 2);
    raise(Errc::kParse, location(text, e.byte) + ": " + msg);
  }
}

[[noreturn]] void field_error(std::string_view field, std::string_view what) {
  raise(Errc::kMalformedSpec, "field '" + std::string(field) + "': " + std::string(what));
}

const json& require(const json& j, std::string_view field) {
  auto it = j.find(field);
  if (it == j.end()) field_error(field, "missing");
  return *it;
}

double as_number(const json& v, std::string_view field) {
  if (!v.is_number()) field_error(field, "expected a number, got " + std::string(v.type_name()));
  return v.get<double>();
}

std::vector<double> as_numbers(const json& v, std::string_view field) {
  if (!v.is_array()) field_error(field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      field_error(field, "entry " + std::to_string(i) + " is " + std::string(v[i].type_name()) +
                             ", expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> known) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (auto k : known) ok = ok || it.key() == k;
    if (!ok) field_error(it.key(), "unknown field");
  }
}

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    raise(Errc::kInvalidQuadruple, "cannot read '" + std::string(s) + "' as " + std::string(what));
  }
  return v;
}

}  // namespace

DomainDocument domain_document_from_json(const json& j) {
  if (!j.is_object()) raise(Errc::kMalformedSpec, "domain spec must be a JSON object");
  reject_unknown(j, {"kind", "interval", "breakpoints", "values", "breakpoint_values"});
  DomainDocument doc;

  const json& kind = require(j, "kind");
  if (!kind.is_string()) field_error("kind", "expected a string");
  const auto k = domain::parse_kind(kind.get<std::string>());
  if (!k) {
    field_error("kind", "unknown kind '" + kind.get<std::string>() +
                            "' (expected step, piecewise-linear or sampled-continuous)");
  }
  doc.spec.kind = *k;

  const json& iv = require(j, "interval");
  if (!iv.is_array() || iv.size() != 2) field_error("interval", "expected [lo, hi]");
  // JSON has no infinity; null stands for an unbounded end.
  for (const json& e : iv) {
    if (e.is_null()) raise(Errc::kUnboundedInterval, "field 'interval': unbounded ends are not supported");
  }
  doc.interval = {as_number(iv[0], "interval"), as_number(iv[1], "interval")};

  auto bp = j.find("breakpoints");
  if (bp != j.end()) doc.spec.breakpoints = as_numbers(*bp, "breakpoints");
  doc.spec.values = as_numbers(require(j, "values"), "values");
  if (auto bv = j.find("breakpoint_values"); bv != j.end()) {
    doc.spec.breakpoint_values = as_numbers(*bv, "breakpoint_values");
  }
  return doc;
}

DomainDocument parse_domain_document(std::string_view text) {
  return domain_document_from_json(parse_json(text));
}

domain::GraphDomain parse_domain(std::string_view text) {
  const DomainDocument doc = parse_domain_document(text);
  return domain::build_graph_domain(doc.spec, doc.interval);
}

domain::GraphDomain load_domain(const std::filesystem::path& path) {
  return parse_domain(read_file(path));
}

json domain_to_json(const domain::BoundaryFunction& f) {
  json j;
  j["kind"] = std::string(domain::kind_name(f.kind()));
  j["interval"] = {f.interval().lo, f.interval().hi};
  j["breakpoints"] = std::vector<double>(f.breakpoints().begin(), f.breakpoints().end());
  j["values"] = f.values();
  return j;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::kIo, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) raise(Errc::kIo, "error reading '" + path.string() + "'");
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::kIo, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) raise(Errc::kIo, "error writing '" + path.string() + "'");
}

domain::PrimeEnd parse_prime_end(std::string_view token, domain::Edge edge) {
  domain::PrimeEnd p;
  p.edge = edge;
  const auto colon = token.find(':');
  p.x = parse_double(token.substr(0, colon), "a prime-end coordinate");
  if (colon != std::string_view::npos) {
    std::string_view tag = token.substr(colon + 1);
    while (!tag.empty() && tag.front() == ' ') tag.remove_prefix(1);
    while (!tag.empty() && tag.back() == ' ') tag.remove_suffix(1);
    if (tag == "l" || tag == "left") {
      p.side = domain::Side::kLeft;
    } else if (tag == "r" || tag == "right") {
      p.side = domain::Side::kRight;
    } else if (tag == "n" || tag == "none") {
      p.side = domain::Side::kNone;
    } else {
      raise(Errc::kInvalidQuadruple, "unknown side tag '" + std::string(tag) + "'");
    }
  }
  return p;
}

domain::BoundaryQuadruple parse_quadruple(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 4) {
    raise(Errc::kInvalidQuadruple, "expected four comma-separated prime ends a,b,c,d");
  }
  using domain::Edge;
  return {parse_prime_end(parts[0], Edge::kBottom), parse_prime_end(parts[1], Edge::kBottom),
          parse_prime_end(parts[2], Edge::kTop), parse_prime_end(parts[3], Edge::kTop)};
}

std::string format_prime_end(const domain::PrimeEnd& p) {
  std::ostringstream os;
  os.precision(12);
  os << p.x;
  if (p.side == domain::Side::kLeft) os << ":l";
  if (p.side == domain::Side::kRight) os << ":r";
  return os.str();
}

std::string format_quadruple(const domain::BoundaryQuadruple& q) {
  return format_prime_end(q.a) + "," + format_prime_end(q.b) + "," + format_prime_end(q.c) + "," +
         format_prime_end(q.d);
}

// ---------------------------------------------------------------------------

json ExperimentConfig::to_json() const {
  json j;
  j["domain"] = domain;
  if (quadruple) j["quadruple"] = *quadruple;
  if (!eps_list.empty()) j["eps_list"] = eps_list;
  if (!eta_list.empty()) j["eta_list"] = eta_list;
  if (!n_list.empty()) j["n_list"] = n_list;
  if (h) j["h"] = *h;
  j["cells_per_min_height"] = cells_per_min_height;
  j["tol"] = tol;
  j["seed"] = seed;
  j["bound"] = bound;
  j["max_iter"] = max_iter;
  return j;
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  const json j = parse_json(text);
  if (!j.is_object()) raise(Errc::kMalformedSpec, "experiment config must be a JSON object");
  reject_unknown(j, {"domain", "quadruple", "eps_list", "eta_list", "n_list", "h",
                     "cells_per_min_height", "tol", "seed", "bound", "max_iter", "out"});
  ExperimentConfig c;

  const json& d = require(j, "domain");
  if (d.is_string()) {
    std::filesystem::path p = d.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    c.domain = parse_json(read_file(p));
  } else if (d.is_object()) {
    c.domain = d;
  } else {
    field_error("domain", "expected a file name or an inline domain object");
  }
  domain_document_from_json(c.domain);  // field errors surface here, not mid-run

  if (auto q = j.find("quadruple"); q != j.end()) {
    if (!q->is_string()) field_error("quadruple", "expected a string \"a,b,c,d\"");
    c.quadruple = q->get<std::string>();
    parse_quadruple(*c.quadruple);
  }
  auto list = [&](const char* key, std::vector<double>& dst) {
    if (auto it = j.find(key); it != j.end()) {
      dst = as_numbers(*it, key);
      if (dst.empty()) field_error(key, "must not be empty");
      for (std::size_t i = 1; i < dst.size(); ++i) {
        if (!(dst[i] < dst[i - 1]) && std::string_view(key) != "n_list") {
          field_error(key, "must be strictly decreasing");
        }
        if (!(dst[i] > dst[i - 1]) && std::string_view(key) == "n_list") {
          field_error(key, "must be strictly increasing");
        }
      }
      for (double v : dst) {
        if (!(v > 0.0)) field_error(key, "entries must be positive");
      }
    }
  };
  list("eps_list", c.eps_list);
  list("eta_list", c.eta_list);
  list("n_list", c.n_list);

  if (auto it = j.find("h"); it != j.end()) {
    c.h = as_number(*it, "h");
    if (!(*c.h > 0.0)) field_error("h", "must be positive");
  }
  if (auto it = j.find("cells_per_min_height"); it != j.end()) {
    c.cells_per_min_height = as_number(*it, "cells_per_min_height");
    if (!(c.cells_per_min_height >= 1.0)) field_error("cells_per_min_height", "must be >= 1");
  }
  if (auto it = j.find("tol"); it != j.end()) {
    c.tol = as_number(*it, "tol");
    if (!(c.tol > 0.0)) field_error("tol", "must be positive");
  }
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) field_error("seed", "expected a nonnegative integer");
    c.seed = it->get<std::uint64_t>();
  }
  if (auto it = j.find("bound"); it != j.end()) c.bound = as_number(*it, "bound");
  if (auto it = j.find("max_iter"); it != j.end()) {
    if (!it->is_number_integer() || it->get<long long>() <= 0) {
      field_error("max_iter", "expected a positive integer");
    }
    c.max_iter = it->get<int>();
  }
  if (auto it = j.find("out"); it != j.end()) {
    if (!it->is_string()) field_error("out", "expected a directory name");
    c.out = it->get<std::string>();
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.parent_path());
}

}  // namespace modlim::io
