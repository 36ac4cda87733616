#include "rgl/io.hpp"

#include <fstream>

namespace rgl {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what, 0); }

json rat_row(const RatVector& v) {
  json row = json::array();
  for (const auto& q : v) row.push_back(to_fraction_string(q));
  return row;
}

json int_row(const IntVector& v) {
  json row = json::array();
  for (const auto& e : v) {
    if (e.fits_slong_p()) row.push_back(e.get_si());
    else row.push_back(e.get_str());  // beyond 64 bits
  }
  return row;
}

IntVector int_vector(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array()) bad(std::string("missing array field \"") + field + "\"");
  IntVector out;
  for (const auto& e : j[field]) {
    if (e.is_number_integer()) out.emplace_back(e.dump());
    else if (e.is_string()) out.emplace_back(e.get<std::string>());
    else bad(std::string("non-integer entry in \"") + field + "\"");
  }
  return out;
}

std::size_t index_of(const json& e, std::size_t n) {
  if (!e.is_number_integer()) bad("index is not an integer");
  const auto v = e.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > n) bad("index " + std::to_string(v) + " outside 1.." + std::to_string(n));
  return static_cast<std::size_t>(v - 1);
}

RatVector rat_vector(const json& row, std::size_t n) {
  if (!row.is_array() || row.size() != n) bad("z vector must have n entries");
  RatVector v;
  for (const auto& e : row) {
    try {
      if (e.is_string()) v.push_back(parse_rational(e.get<std::string>()));
      else if (e.is_number_integer()) v.push_back(parse_rational(e.dump()));
      else bad("z entries must be \"num/den\" strings");
    } catch (const std::invalid_argument& ex) {
      bad(ex.what());
    }
  }
  return v;
}

}  // namespace

json to_json(const GCCCertificate& cert) {
  json j;
  j["n"] = cert.n;
  j["T"] = cert.T();
  j["flavor"] = to_string(cert.flavor);
  j["z"] = json::array();
  for (const auto& z : cert.z) j["z"].push_back(rat_row(z));
  j["R"] = json::array();
  for (std::size_t t = 0; t < cert.R.size(); ++t) {
    if (t == 0 && cert.R[0].is_complete()) {
      j["R"].push_back("complete");
      continue;
    }
    json edges = json::array();
    for (auto [a, b] : cert.R[t].edges()) edges.push_back({a + 1, b + 1});
    j["R"].push_back(edges);
  }
  return j;
}

json to_json(const CCCertificate& cert) {
  json j;
  j["n"] = cert.n;
  j["T"] = cert.T();
  j["flavor"] = "cc";
  j["z"] = json::array();
  for (const auto& z : cert.z) j["z"].push_back(rat_row(z));
  j["R"] = json::array();
  for (const auto& r : cert.R) {
    json members = json::array();
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i]) members.push_back(i + 1);
    j["R"].push_back(members);
  }
  return j;
}

json to_json(const GridSpec& s) {
  json j;
  j["n"] = s.n;
  j["x"] = int_row(s.x);
  j["y"] = int_row(s.y);
  j["b"] = int_row(s.b);
  j["c"] = int_row(s.c);
  j["d"] = int_row(s.d);
  return j;
}

json to_json(const Witness& w) {
  json j;
  j["x"] = w.x;
  j["color"] = to_string(w.color);
  j["coloring"] = w.coloring;
  j["N"] = w.N;
  j["verified"] = true;
  return j;
}

json to_json(const EdgeTable& table) {
  json j;
  j["N"] = table.order();
  j["edges"] = json::array();
  for (std::int64_t u = 1; u <= table.order(); ++u)
    for (std::int64_t v = u + 1; v <= table.order(); ++v) j["edges"].push_back({u, v, table.at(u, v)});
  return j;
}

json to_json(const Violation& v) {
  json j;
  j["condition"] = v.condition;
  j["t"] = v.time;
  if (v.i) j["i"] = *v.i + 1;
  if (v.j) j["j"] = *v.j + 1;
  j["detail"] = v.detail;
  return j;
}

AnyCertificate certificate_from_json(const json& j) {
  if (!j.is_object()) bad("certificate must be a JSON object");
  for (const char* f : {"n", "flavor", "z", "R"})
    if (!j.contains(f)) bad(std::string("missing field \"") + f + "\"");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) bad("\"n\" must be a positive integer");
  const auto n = static_cast<std::size_t>(j["n"].get<long long>());

  AnyCertificate out;
  try {
    out.flavor = parse_flavor(j["flavor"].get<std::string>());
  } catch (const std::exception& e) {
    bad(e.what());
  }
  const json& z = j["z"];
  const json& R = j["R"];
  if (!z.is_array() || !R.is_array()) bad("\"z\" and \"R\" must be arrays");
  if (z.size() != R.size()) bad("\"z\" and \"R\" must have the same length");
  if (j.contains("T") && j["T"].is_number_integer()) {
    const auto T = j["T"].get<long long>();
    const auto expect = out.flavor == Flavor::cc ? static_cast<long long>(z.size()) : static_cast<long long>(z.size()) - 1;
    if (T != expect) bad("\"T\" disagrees with the number of z vectors");
  }

  if (out.flavor == Flavor::cc) {
    out.cc.n = n;
    for (const auto& row : z) out.cc.z.push_back(rat_vector(row, n));
    for (const auto& set : R) {
      if (!set.is_array()) bad("cc restriction sets must be index lists");
      std::vector<bool> members(n, false);
      for (const auto& e : set) members[index_of(e, n)] = true;
      out.cc.R.push_back(std::move(members));
    }
    return out;
  }

  out.gcc.n = n;
  out.gcc.flavor = out.flavor;
  for (const auto& row : z) out.gcc.z.push_back(rat_vector(row, n));
  for (const auto& g : R) {
    if (g.is_string()) {
      if (g.get<std::string>() != "complete") bad("restriction graph string must be \"complete\"");
      out.gcc.R.push_back(Graph::complete(n));
      continue;
    }
    if (!g.is_array()) bad("restriction graphs must be edge lists");
    Graph graph(n);
    for (const auto& e : g) {
      if (!e.is_array() || e.size() != 2) bad("edges must be [i, j] pairs");
      const auto a = index_of(e[0], n), b = index_of(e[1], n);
      if (a == b) bad("self-loop in restriction graph");
      graph.add(a, b);
    }
    out.gcc.R.push_back(std::move(graph));
  }
  return out;
}

GridSpec grid_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) bad("grid needs integer field \"n\"");
  GridSpec s;
  const auto n = j["n"].get<long long>();
  if (n < 1) bad("\"n\" must be positive");
  s.n = static_cast<std::size_t>(n);
  s.x = int_vector(j, "x");
  s.y = int_vector(j, "y");
  s.b = int_vector(j, "b");
  s.c = int_vector(j, "c");
  s.d = int_vector(j, "d");
  return s;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what(), 0);
  }
}

}  // namespace rgl
