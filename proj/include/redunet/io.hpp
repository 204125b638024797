#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "redunet/model.hpp"

namespace redunet {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Line-oriented instance format. Canonical serialization round-trips
// byte-identically:
//
//   redunet instance v1
//   problem rand            (or rafl)
//   packets <count>
//   <id> <weight>
//   nodes <n>
//   edges <m>
//   <u> <v> <cost>
//   source <node>           (rand only)
//   terminals <count>
//   <id> <node> <k> <packet id...>
//   facilities <count>      (rafl only)
//   <id> <node> <lambda>
//
// '#' starts a comment; blank lines are ignored.
std::string serialize(const RandInstance& inst);
std::string serialize(const RaflInstance& inst);

using AnyInstance = std::variant<RandInstance, RaflInstance>;
AnyInstance parse_instance(const std::string& text);
AnyInstance load_instance(const std::string& path);

// Solution files:
//   redunet solution v1
//   problem rand
//   paths <count>
//   <terminal id> <length> <node...>
// or
//   problem rafl
//   assignments <count>
//   <terminal id> <facility id>
std::string serialize_solution(const RandSolution& sol, const RandInstance& inst);
std::string serialize_solution(const Assignment& a, const RaflInstance& inst);
RandSolution parse_rand_solution(const std::string& text, const RandInstance& inst);
Assignment parse_rafl_solution(const std::string& text, const RaflInstance& inst);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace redunet
