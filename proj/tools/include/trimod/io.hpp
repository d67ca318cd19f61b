#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "trimod/deform.hpp"
#include "trimod/descent.hpp"
#include "trimod/families.hpp"
#include "trimod/fincat.hpp"
#include "trimod/grothendieck.hpp"
#include "trimod/torsor.hpp"

namespace trimod::io {

using json = nlohmann::json;

// Parse or validation failure at a JSON pointer inside a document.
class InputError : public std::runtime_error {
 public:
  InputError(std::string location, const std::string& message)
      : std::runtime_error(location + ": " + message), location_(std::move(location)), message_(message) {}
  const std::string& location() const noexcept { return location_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string location_;
  std::string message_;
};

// Reads and parses a file; errors name the file.
json load_json(const std::string& path);

Rational read_rational(const json& j, const std::string& at);
TriangleLengths read_lengths(const json& j, const std::string& at);
Perm read_perm(const json& j, const std::string& at);
json write_lengths(const TriangleLengths& t);

// {"objects":[...], "morphisms":[{"id","src","tgt"}], "identities":{obj:id},
//  "compose":[[g,f,gf],...]}
FinCat read_category(const json& j, const std::string& at = "");
json write_category(const FinCat& c);

// {"onObjects":{...}, "onMorphisms":{...}}
Functor read_functor(const json& j, const FinCat& source, const FinCat& target, const std::string& at = "");
json write_functor(const Functor& f, const FinCat& source, const FinCat& target);

// {"total": category, "projection": functor}, over `base`.
CategoryOver read_fibration(const json& j, const FinCat& base, const std::string& at = "");
// As above with the base inline under "base".
CategoryOver read_fibration(const json& j, const std::string& at = "");
json write_fibration(const CategoryOver& f);

// {"base", "fibers":{S: category}, "pullbacks":{f: functor},
//  "epsilon":{S:{s: mor}}, "alpha":[{"f","g","components":{s: mor}}]}.
// Missing epsilon and alpha mean identities.
PseudoFunctor read_pseudofunctor(const json& j, const std::string& at = "");
json write_pseudofunctor(const PseudoFunctor& p);

// {"category", "coverings":{X:[[mor,...],...]},
//  "pullbacks":[{"f","g","apex","toLeft","toRight"}]}; listed pullbacks
// override the computed choice.
FiniteSite read_site(const json& j, const std::string& at = "");
json write_site(const FiniteSite& s);

// {"target": X, "covering": index, "objects":{i: obj}, "transitions":{"j,i": mor}}
DescentDatum read_datum(const json& j, const DescentContext& ctx, const std::string& at = "");
json write_datum(const DescentDatum& d, const DescentContext& ctx);

PLFamily read_family(const json& j, const std::string& at = "");
json write_family(const PLFamily& f);

// {"vertices":[...], "edges":[{"id","from","to"}], "faces":[[u,v,w]],
//  "group":"S3"|"Z2"|...|{"labels":[...],"table":[[...]]},
//  "transitions":{"v->w" or edge id: label}}. Without "edges", one edge per
// transition key "v->w" is created.
TorsorCocycle read_torsor(const json& j, const std::string& at = "");
json write_torsor(const TorsorCocycle& t);
DescentPieces read_pieces(const json& j, const std::string& at = "");

// Torsor plus "equivariant":{v:{sheet: lengths}} and
// "homotopies":{edge:{sheet: chart}}.
TorsorPair read_pair(const json& j, const std::string& at = "");
json write_pair(const TorsorPair& p);

// Family plus {"basepoint": v, "triangle": lengths, "marking": perm}.
Deformation read_deformation(const json& j, const std::string& at = "");
json write_deformation(const Deformation& d);

}  // namespace trimod::io
