#pragma once

// Parent-array JSON interchange: {"parents":[-1,0,0,...]}.
// The BFS-normalized parent array is the bit-exact format shared by all
// modules and the CLI.

#include <string>

#include "mbt/tree.hpp"

namespace mbt {

std::string tree_to_json(const RootedTree& t);
RootedTree tree_from_json(const std::string& text);
RootedTree tree_from_json_file(const std::string& path);

}  // namespace mbt
