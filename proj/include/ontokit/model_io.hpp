#pragma once

#include <string>
#include <string_view>

#include "ontokit/etg.hpp"

namespace ontokit {

// Line-oriented model files under models/. The header names the stage:
//
//   ontokit-model 1 er|etg|grounded
//   context "<domain>" "<spatial scope>" <start|-> <end|->
//   node "<label>" <kind> <gid|-> <"parent"|-> [<distinction>]
//   relation "<name>" "<source>" "<target>" <grounding|->
//   property "<label>" "<name>" <kind> "<range>"
//   warning "<text>"
//   end <record count>
std::string write_er(const ERModel& model);
std::string write_etg(const ETG& etg);
std::string write_grounded(const GroundedDomainModel& model);

ERModel read_er(std::string_view text);
// Both reject files of another stage with ParseError.
ETG read_etg(std::string_view text);
GroundedDomainModel read_grounded(std::string_view text);

}  // namespace ontokit
