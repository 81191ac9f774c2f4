#pragma once

#include <json.hpp>

#include "treecs/cantor.hpp"
#include "treecs/holfin.hpp"
#include "treecs/ordfun.hpp"
#include "treecs/ordinal.hpp"
#include "treecs/projtree.hpp"
#include "treecs/rational.hpp"
#include "treecs/treespace.hpp"
#include "treecs/trees.hpp"

// All readers throw ParseError on malformed input (wrong shape, bad rational
// or ordinal text) and DomainError when the value violates an invariant.
namespace treecs::json {

using Json = nlohmann::ordered_json;

Json write_rational(const Rational& q);
Rational read_rational(const Json& j);

Json write_ordinal(const Ordinal& a);
Ordinal read_ordinal(const Json& j);

Json write_node(const Node& s);
Node read_node(const Json& j);

Json write_schema(const TreeSchema& t);
TreeSchema read_schema(const Json& j);

Json write_trunk(const Trunk& t);
/// Array of nodes, validated against the schema.
Trunk read_trunk(const Json& j, const TreeSchema& schema);

Json write_element(const Element& a);
Element read_element(const Json& j);

Json write_word(const BinWord& w);
BinWord read_word(const Json& j);

Json write_point(const CantorPoint& x);
CantorPoint read_point(const Json& j);

Json write_step(const StepFunction& f);
StepFunction read_step(const Json& j);

Json write_ordstep(const OrdStepFunction& f);
OrdStepFunction read_ordstep(const Json& j);

Json write_functional(const HostFunctional& mu);
HostFunctional read_functional(const Json& j);

Json write_projtree(const ProjTreeData& d);
ProjTreeData read_projtree(const Json& j);

Json write_operator(const FiniteOperator& op);
FiniteOperator read_operator(const Json& j);

Json write_extraction(const Extraction& ex);
Extraction read_extraction(const Json& j);

/// Parses text, converting library exceptions to ParseError.
Json parse_text(const std::string& text);

}  // namespace treecs::json
