#include "mbt/tree_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mbt {

std::string tree_to_json(const RootedTree& t) {
  nlohmann::json j;
  j["parents"] = t.parents();
  return j.dump();
}

RootedTree tree_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  if (!j.contains("parents") || !j["parents"].is_array())
    throw std::invalid_argument("tree json: missing \"parents\" array");
  std::vector<int> parents = j["parents"].get<std::vector<int>>();
  return RootedTree::from_parents(parents);
}

RootedTree tree_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tree file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return tree_from_json(ss.str());
}

}  // namespace mbt
