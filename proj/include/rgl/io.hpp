#pragma once

#include "rgl/certs.hpp"
#include "rgl/grid.hpp"
#include "rgl/search.hpp"

#include <json.hpp>

#include <string>

namespace rgl {

using json = nlohmann::ordered_json;

/// Certificates use 1-based indices and "num/den" entries. For graph
/// certificates R[0] is written as "complete"; for cc certificates each R
/// entry is a list of column indices.
json to_json(const GCCCertificate& cert);
json to_json(const CCCertificate& cert);
json to_json(const GridSpec& spec);
json to_json(const Witness& w);
json to_json(const EdgeTable& table);
json to_json(const Violation& v);

/// Either certificate kind, as selected by the "flavor" field.
struct AnyCertificate {
  Flavor flavor = Flavor::weak;
  CCCertificate cc;
  GCCCertificate gcc;
};

/// Throws ParseError (line 0) on malformed documents.
AnyCertificate certificate_from_json(const json& j);
GridSpec grid_from_json(const json& j);

json load_json(const std::string& path);

}  // namespace rgl
