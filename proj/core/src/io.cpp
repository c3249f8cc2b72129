#include "emknot/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "emknot/errors.hpp"
#include "json.hpp"

namespace emknot {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

// Line of every value in a syntactically valid JSON text, keyed by JSON pointer.
std::map<std::string, int> value_lines(const std::string& text) {
  struct Frame {
    bool object;
    std::string key;
    int index = 0;
    bool expect_key = true;
  };
  std::map<std::string, int> lines;
  std::vector<Frame> stack;
  int line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();

  auto pointer = [&] {
    std::string p;
    for (const auto& f : stack) p += "/" + (f.object ? f.key : std::to_string(f.index));
    return p;
  };
  auto skip_string = [&]() {
    std::string s;
    ++i;
    while (i < n && text[i] != '"') {
      if (text[i] == '\\' && i + 1 < n) {
        s += text[i + 1];
        i += 2;
        continue;
      }
      if (text[i] == '\n') ++line;
      s += text[i++];
    }
    ++i;
    return s;
  };

  while (i < n) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == ':') {
      ++i;
      continue;
    }
    if (c == ',') {
      if (!stack.empty()) {
        if (stack.back().object) stack.back().expect_key = true;
        else ++stack.back().index;
      }
      ++i;
      continue;
    }
    if (c == '}' || c == ']') {
      stack.pop_back();
      ++i;
      continue;
    }
    if (!stack.empty() && stack.back().object && stack.back().expect_key) {
      stack.back().key = skip_string();
      stack.back().expect_key = false;
      continue;
    }
    lines[pointer()] = line;
    if (c == '{') {
      stack.push_back({true, "", 0, true});
      ++i;
    } else if (c == '[') {
      stack.push_back({false, "", 0, false});
      ++i;
    } else if (c == '"') {
      skip_string();
    } else {
      while (i < n && text[i] != ',' && text[i] != '}' && text[i] != ']' && !std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
    }
  }
  return lines;
}

class DocReader {
 public:
  DocReader(const std::string& source, const std::map<std::string, int>& lines) : source_(source), lines_(lines) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    auto it = lines_.find(ptr);
    throw ParseError(source_, it == lines_.end() ? 0 : it->second, msg);
  }

  HalfInteger half(const json& v, const std::string& ptr, const std::string& what) const {
    try {
      if (v.is_string()) return HalfInteger::parse(v.get<std::string>());
      if (v.is_number_integer()) return HalfInteger::from_int(v.get<int>());
    } catch (const std::exception& e) {
      fail(ptr, what + ": " + e.what());
    }
    fail(ptr, what + " must be an integer or a fraction string like \"1/2\"");
  }

  double number(const json& v, const std::string& ptr, const std::string& what) const {
    if (!v.is_number()) fail(ptr, what + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(ptr, what + " must be finite");
    return d;
  }

  ModeCoefficients read(const json& doc, const std::string& base) const {
    if (!doc.is_object()) fail(base, "expected an object with j, ell and coefficients");
    for (const char* key : {"j", "ell", "coefficients"})
      if (!doc.contains(key)) fail(base, std::string("missing field '") + key + "'");
    for (auto it = doc.begin(); it != doc.end(); ++it)
      if (it.key() != "j" && it.key() != "ell" && it.key() != "coefficients")
        fail(base + "/" + it.key(), "unknown field '" + it.key() + "'");

    const HalfInteger j = half(doc["j"], base + "/j", "j");
    if (j.twice() < 0) fail(base + "/j", "j must be non-negative");
    const double ell = number(doc["ell"], base + "/ell", "ell");
    if (!(ell > 0.0)) fail(base + "/ell", "ell must be positive");
    ModeCoefficients lambda(j, ell);

    const json& list = doc["coefficients"];
    const std::string lp = base + "/coefficients";
    if (!list.is_array()) fail(lp, "coefficients must be a list");
    std::set<int> seen;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string ep = lp + "/" + std::to_string(k);
      const json& e = list[k];
      if (!e.is_object()) fail(ep, "coefficient entry must be an object");
      for (const char* key : {"m", "n", "re", "im"})
        if (!e.contains(key)) fail(ep, std::string("coefficient entry missing '") + key + "'");
      for (auto it = e.begin(); it != e.end(); ++it)
        if (it.key() != "m" && it.key() != "n" && it.key() != "re" && it.key() != "im")
          fail(ep + "/" + it.key(), "unknown field '" + it.key() + "'");
      const HalfInteger m = half(e["m"], ep + "/m", "m");
      const HalfInteger n = half(e["n"], ep + "/n", "n");
      if (!lambda.contains(m, n))
        fail(ep, "mode (m=" + m.to_string() + ", n=" + n.to_string() + ") outside spin " + j.to_string());
      const int idx = lambda.index(m, n);
      if (!seen.insert(idx).second)
        fail(ep, "duplicate mode (m=" + m.to_string() + ", n=" + n.to_string() + ")");
      lambda.set(m, n, cplx(number(e["re"], ep + "/re", "re"), number(e["im"], ep + "/im", "im")));
    }
    return lambda;
  }

 private:
  std::string source_;
  const std::map<std::string, int>& lines_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ojson num(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson grid_json(const GridSize& g) { return ojson::array({g.n_chi, g.n_theta, g.n_phi}); }

}  // namespace

std::vector<ModeCoefficients> parse_coefficients(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i)
      if (text[i] == '\n') ++line;
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError(source, line, msg);
  }
  const auto lines = value_lines(text);
  const DocReader reader(source, lines);
  std::vector<ModeCoefficients> out;
  if (root.is_array()) {
    if (root.empty()) reader.fail("", "empty document list");
    for (std::size_t k = 0; k < root.size(); ++k) out.push_back(reader.read(root[k], "/" + std::to_string(k)));
  } else {
    out.push_back(reader.read(root, ""));
  }
  return out;
}

std::vector<ModeCoefficients> load_coefficients(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_coefficients(ss.str(), path);
}

std::string coefficients_to_json(const ModeCoefficients& lambda) {
  ojson doc;
  doc["j"] = lambda.j().to_string();
  doc["ell"] = lambda.ell();
  ojson list = ojson::array();
  for (int k = 0; k < lambda.size(); ++k) {
    const cplx v = lambda.values()[k];
    if (v == cplx(0.0, 0.0)) continue;
    const auto [m, n] = lambda.label(k);
    list.push_back({{"m", m.to_string()}, {"n", n.to_string()}, {"re", v.real()}, {"im", v.imag()}});
  }
  doc["coefficients"] = list;
  return doc.dump(2) + "\n";
}

std::string report_to_json(const std::vector<std::pair<ModeCoefficients, ChargeReport>>& reports) {
  ojson all = ojson::array();
  for (const auto& [lambda, r] : reports) {
    ojson doc;
    doc["j"] = lambda.j().to_string();
    doc["ell"] = lambda.ell();
    doc["grid"] = grid_json(r.grid);
    ojson charges;
    for (const auto& e : r.entries) charges[e.name] = e.value;
    doc["charges"] = charges;
    ojson refs;
    for (const auto& e : r.entries) {
      if (!e.reference) continue;
      refs[e.name] = {{"reference", *e.reference},
                      {"abs_deviation", e.abs_deviation},
                      {"rel_deviation", num(e.rel_deviation)}};
    }
    doc["references"] = refs;
    doc["max_reference_deviation"] = num(r.max_reference_deviation);
    doc["reference_tolerance"] = r.options.reference_tol;
    doc["references_ok"] = r.references_ok;
    ojson conv;
    if (r.refined) {
      conv["refined_grid"] = grid_json(r.grid.doubled());
      conv["max_doubling_change"] = num(r.max_doubling_change);
      conv["tolerance"] = r.options.convergence_tol;
      conv["converged"] = r.converged;
    } else {
      conv["checked"] = false;
    }
    doc["convergence"] = conv;
    all.push_back(doc);
  }
  return all.dump(2) + "\n";
}

std::string report_to_csv(const std::vector<std::pair<ModeCoefficients, ChargeReport>>& reports) {
  std::ostringstream os;
  os << "j,ell,name,value,reference,abs_deviation,rel_deviation,doubling_change\n";
  for (const auto& [lambda, r] : reports) {
    for (const auto& e : r.entries) {
      os << lambda.j().to_string() << ',' << fmt(lambda.ell()) << ',' << e.name << ',' << fmt(e.value) << ',';
      if (e.reference) os << fmt(*e.reference) << ',' << fmt(e.abs_deviation) << ',' << fmt(e.rel_deviation);
      else os << ",,";
      os << ',';
      if (r.refined) os << fmt(e.doubling_change);
      os << '\n';
    }
  }
  return os.str();
}

std::string polylines_to_json(const std::vector<TraceOutcome>& lines) {
  ojson all = ojson::array();
  for (const auto& o : lines) {
    const Polyline& p = o.line;
    ojson doc;
    doc["seed"] = {p.seed[0], p.seed[1], p.seed[2]};
    doc["field"] = to_string(p.field);
    doc["closed"] = p.closed;
    if (p.closed) doc["closure_gap"] = p.closure_gap;
    doc["arc_length"] = p.arc_length;
    if (!o.ok) doc["error"] = o.error;
    ojson pts = ojson::array();
    for (const auto& x : p.points) pts.push_back({x[0], x[1], x[2]});
    doc["points"] = pts;
    all.push_back(doc);
  }
  return all.dump() + "\n";
}

std::string polylines_to_csv(const std::vector<TraceOutcome>& lines) {
  std::ostringstream os;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const Polyline& p = lines[k].line;
    os << "# seed " << k << ' ' << fmt(p.seed[0]) << ' ' << fmt(p.seed[1]) << ' ' << fmt(p.seed[2]) << " field "
       << to_string(p.field) << " closed " << (p.closed ? 1 : 0) << " arc_length " << fmt(p.arc_length);
    if (!lines[k].ok) os << " error " << lines[k].error;
    os << "\ns,x,y,z\n";
    for (std::size_t i = 0; i < p.points.size(); ++i)
      os << fmt(p.s[i]) << ',' << fmt(p.points[i][0]) << ',' << fmt(p.points[i][1]) << ',' << fmt(p.points[i][2])
         << '\n';
  }
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("error writing " + path);
}

}  // namespace emknot
