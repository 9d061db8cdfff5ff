#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdiso/decomposition.hpp"
#include "tdiso/graph.hpp"

namespace tdiso {

// `.gi` text: 1-indexed on disk, 0-indexed in memory.
struct GiDocument {
  Graph graph;
  std::optional<EquivalencePartition> partition;
  std::optional<TupleColoring> coloring;
  std::vector<std::string> comments;

  ColoredGraph colored() const;
};

GiDocument parse_gi(std::string_view text);
std::string serialize_gi(const Graph& g, const std::vector<std::string>& comments = {});
std::string serialize_gi(const ColoredGraph& g, const std::vector<std::string>& comments = {});

std::vector<VertexSet> parse_bag_family(std::string_view text);
std::string serialize_bag_family(const std::vector<VertexSet>& sets);

struct DecompositionDump {
  StrongTreeDecomposition decomposition;
  std::optional<std::size_t> root;
};

DecompositionDump parse_decomposition(std::string_view text);
std::string serialize_decomposition(const StrongTreeDecomposition& d, std::optional<std::size_t> root = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace tdiso
