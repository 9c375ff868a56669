#include "stree/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

#include "stree/errors.hpp"

namespace stree {
namespace {

bool skippable(const std::string& line) {
  return line.empty() || line.front() == '#';
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

BipartiteGraph read_edge_list(std::istream& in) {
  GraphBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (skippable(line)) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 2) {
      throw IngestError(line_no, "expected 2 TAB-separated fields, got " +
                                     std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw IngestError(line_no, "empty node label");
    }
    builder.add_edge(fields[0], fields[1]);
  }
  return std::move(builder).build();
}

BipartiteGraph load_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const BipartiteGraph& g) {
  for (const Edge& e : g.edges()) {
    out << g.source_label(e.source) << '\t' << g.target_label(e.target) << '\n';
  }
}

std::unordered_map<std::string, int> read_labels(std::istream& in) {
  std::unordered_map<std::string, int> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (skippable(line)) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty() ||
        (fields[1] != "0" && fields[1] != "1")) {
      throw IngestError(line_no, "expected `label<TAB>0|1`");
    }
    labels[fields[0]] = fields[1] == "1" ? 1 : 0;
  }
  return labels;
}

std::unordered_map<std::string, int> load_labels(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_labels(in);
}

void write_labels(std::ostream& out,
                  const std::vector<std::pair<std::string, int>>& labels) {
  for (const auto& [label, value] : labels) out << label << '\t' << value << '\n';
}

std::vector<std::pair<std::string, double>> read_ranking(std::istream& in) {
  std::vector<std::pair<std::string, double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (skippable(line)) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty()) {
      throw IngestError(line_no, "expected `label<TAB>score`");
    }
    std::size_t used = 0;
    double score = 0.0;
    try {
      score = std::stod(fields[1], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != fields[1].size()) {
      throw IngestError(line_no, "bad score '" + fields[1] + "'");
    }
    rows.emplace_back(fields[0], score);
  }
  return rows;
}

void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& fill) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw Error("cannot write " + tmp.string());
      fill(out);
      out.flush();
      if (!out) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

}  // namespace stree
