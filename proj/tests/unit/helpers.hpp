#pragma once

#include "rgl/certs.hpp"
#include "rgl/ratmath.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace testing {

inline rgl::RatVector rat(std::initializer_list<long> v) {
  rgl::RatVector out;
  for (long e : v) out.emplace_back(e);
  return out;
}

inline rgl::IntVector ints(std::initializer_list<long> v) {
  rgl::IntVector out;
  for (long e : v) out.emplace_back(e);
  return out;
}

inline rgl::IntMatrix ex6() { return {{1, -1, 0, -1, 4, -3}, {0, 0, 1, -1, 1, -1}}; }
inline rgl::IntMatrix ex8() {
  return {{1, -1, 0, 0, 0, 0, -1, 1}, {0, 0, 1, -1, 0, 0, -1, 1}, {0, 0, 0, 0, 1, -1, -1, 1}};
}
inline rgl::IntMatrix wxyz() { return {{1, -1, 1, -1}}; }

inline rgl::Graph edges(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> es) {
  rgl::Graph g(n);
  for (auto [a, b] : es) g.add(a - 1, b - 1);
  return g;
}

/// Certificate for the six-variable example.
inline rgl::GCCCertificate ex6_cert() {
  rgl::GCCCertificate c;
  c.n = 6;
  c.flavor = rgl::Flavor::strong;
  c.z = {rat({1, 1, 1, 1, 1, 1}), rat({1, 1, 0, 0, 0, 0}), rat({1, 0, 1, 1, 0, 0}), rat({3, 0, 1, 0, 0, 1})};
  c.R = {rgl::Graph::complete(6), rgl::Graph::from_blocks({0, 0, 1, 1, 1, 1}),
         edges(6, {{3, 4}, {5, 6}}), rgl::Graph(6)};
  return c;
}

/// The eight-variable example certificate with r = 2.
inline rgl::GCCCertificate ex8_cert() {
  rgl::GCCCertificate c;
  c.n = 8;
  c.flavor = rgl::Flavor::weak;
  c.z = {rat({1, 1, 1, 1, 1, 1, 1, 1}), rat({1, 1, 1, 1, 0, 0, 0, 0}), rat({1, 1, 0, 0, 1, 1, 0, 0}),
         rat({1, 0, 1, 0, 1, 0, 3, 2})};
  c.R = {rgl::Graph::complete(8), rgl::Graph::from_blocks({0, 0, 0, 0, 1, 1, 1, 1}),
         rgl::Graph::from_blocks({0, 0, 1, 1, 2, 2, 3, 3}), rgl::Graph(8)};
  return c;
}

inline rgl::GCCCertificate wxyz_cert() {
  rgl::GCCCertificate c;
  c.n = 4;
  c.flavor = rgl::Flavor::strong;
  c.z = {rat({1, 1, 1, 1}), rat({1, 1, 0, 0}), rat({1, 0, 0, 1})};
  c.R = {rgl::Graph::complete(4), rgl::Graph::from_blocks({0, 0, 1, 1}), rgl::Graph(4)};
  return c;
}

inline std::string data(const std::string& name) { return std::string(RGL_TEST_DATA) + "/" + name; }

}  // namespace testing
