// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "json.hpp"

#include "kp/grassmann.hpp"
#include "kp/inverse.hpp"
#include "kp/plabic.hpp"
#include "kp/positroid.hpp"
#include "kp/soliton.hpp"
#include "kp/triangulation.hpp"

namespace kp {

/// Objects keep insertion order so that dumps are byte-stable.
using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits; -0 becomes 0.
double round12(double x);

Json to_json(const GrassmannPoint& p);
GrassmannPoint point_from_json(const Json& j);
Json to_json(const PlueckerVector& pl);
Json to_json(const GrassmannNecklace& neck);
GrassmannNecklace necklace_from_json(const Json& j, int n);
Json to_json(const Derangement& d);
Derangement derangement_from_json(const Json& j);
Json to_json(const Asymptotics& as, int n);
Json to_json(const GeneralizedPlabicGraph& g);
Json to_json(const Triangulation& t);
Triangulation triangulation_from_json(const Json& j);
Json to_json(const ContourPlot& cp);
/// Inverse of to_json(ContourPlot); kappa is supplied separately.
ContourPlot contour_from_json(const Json& j, const KappaParams& kappa);
Json to_json(const Reconstruction& r);

std::string contour_svg(const ContourPlot& cp);
std::string graph_svg(const GeneralizedPlabicGraph& g);

/// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace kp
