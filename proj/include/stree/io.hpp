#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stree/graph.hpp"

namespace stree {

// Edge list: one `source<TAB>target` per line. Lines starting with '#' and
// blank lines are skipped. Any other line must have exactly two non-empty
// TAB-separated fields.
BipartiteGraph read_edge_list(std::istream& in);
BipartiteGraph load_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const BipartiteGraph& g);

// Labels: `label<TAB>0|1` per line, same comment rules as edge lists.
std::unordered_map<std::string, int> read_labels(std::istream& in);
std::unordered_map<std::string, int> load_labels(const std::filesystem::path& path);
void write_labels(std::ostream& out,
                  const std::vector<std::pair<std::string, int>>& labels);

// Ranking: `label<TAB>score`, as produced by write_ranking.
std::vector<std::pair<std::string, double>> read_ranking(std::istream& in);

// Splits on TAB, keeping empty fields.
std::vector<std::string> split_tabs(const std::string& line);

// Runs `fill` against a temporary sibling of `path`, then renames it into
// place. The temporary is removed if `fill` throws.
void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& fill);

}  // namespace stree
