#ifndef DCALC_SERIALIZE_HPP
#define DCALC_SERIALIZE_HPP

#include <string>
#include <string_view>

#include "dcalc/hd.hpp"
#include "dcalc/md.hpp"

namespace dcalc {

// Record trees {"rule", "sequent", "params", "premises"}; mD structural
// steps use rule "Structural" plus a "structural" {rule, path, params}
// payload. Output is deterministic. The readers throw ParseError on
// malformed records; they do not check the derivation.
std::string to_json(const HDerivation& d, int indent = 2);
std::string to_json(const MDerivation& d, int indent = 2);
std::string to_json(const RewriteTrace& t, int indent = 2);

HDerivation hd_from_json(std::string_view text, const Signature& sig);
MDerivation md_from_json(std::string_view text, const Signature& sig);
// Re-applies every step; throws RuleError if a recorded result disagrees.
RewriteTrace trace_from_json(std::string_view text, const Signature& sig);

// bussproofs source.
std::string to_latex(const HDerivation& d);
std::string to_latex(const MDerivation& d);

// Indented tree, conclusion first.
std::string to_text(const HDerivation& d);
std::string to_text(const MDerivation& d);
std::string to_text(const RewriteTrace& t);

std::string latex_of(std::string_view ascii);

}  // namespace dcalc

#endif
