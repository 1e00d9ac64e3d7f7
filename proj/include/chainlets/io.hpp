#pragma once

#include <iosfwd>
#include <string>

#include "chainlets/chain.hpp"
#include "chainlets/form.hpp"
#include "chainlets/geometry.hpp"
#include "chainlets/smooth_map.hpp"

namespace chainlets {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Chain text format, bit-exact in rational mode:
//   chainlet-chain v1
//   n <dim>
//   mode rational|float
//   pole <x1> ... <xn> ; <order> ; <sym indices|-> ; <lambda indices|-> ; <coeff>
std::string chain_to_text(const Chain& p);
Chain chain_from_text(const std::string& text);
void write_chain_file(const std::string& path, const Chain& p);
Chain read_chain_file(const std::string& path);

// Form literals, e.g. "sin(2*x1)*dx1 + x2*dx2" or "x1^2*dx1^dx3 - 1/2*dx2".
// Coefficient atoms: rational or decimal numbers, coordinates x<i>,
// sin(affine), cos(affine), '+', '-', '*', integer '^' powers, parentheses.
// '^' between dx atoms is the wedge.
Form parse_form(const std::string& text, int n);

// Comma-separated coefficient expressions, one per codomain component.
SmoothMap parse_map(const std::string& text, int n);

// Mesh pair file:
//   chainlet-meshpair v1
//   n <dim>
//   primal k <k> vertices <nv> simplices <ns>
//   v <coords...>            (nv lines)
//   s <coeff> <ids...>       (ns lines)
//   dual k <n-k> vertices <nv> simplices <ns>
//   ... same layout ...
//   bijection <count>
//   b <primal id> <dual id>
std::string meshpair_to_text(const MeshPair& mp);
MeshPair meshpair_from_text(const std::string& text);
void write_meshpair_file(const std::string& path, const MeshPair& mp);
MeshPair read_meshpair_file(const std::string& path);

// Bracket report with witnesses, for audit.
std::string bracket_report(const NormBracket& b);

}  // namespace chainlets
