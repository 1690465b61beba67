#pragma once

#include <iosfwd>
#include <string>

#include "dircheeger/graph.hpp"

namespace dircheeger {

// Plain-text formats. Tokens are whitespace separated; '#' starts a comment
// that runs to the end of the line.
//
//   digraph n m            hypergraph n m          v pi
//   tail head weight       weight k v1 ... vk      ...
//   ...                    ...
//
// Vertices are 0-indexed. Vertices missing from a weights file get pi = 0.

DirectedGraph read_digraph(std::istream& in);
Hypergraph read_hypergraph(std::istream& in);
VertexWeights read_vertex_weights(std::istream& in, int n);

DirectedGraph load_digraph(const std::string& path);
Hypergraph load_hypergraph(const std::string& path);
VertexWeights load_vertex_weights(const std::string& path, int n);

/// Reads whichever format the header names; returns true for a hypergraph.
bool peek_is_hypergraph(const std::string& path);

void write_digraph(std::ostream& out, const DirectedGraph& g);
void write_hypergraph(std::ostream& out, const Hypergraph& h);
void write_vertex_weights(std::ostream& out, const VertexWeights& pi);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace dircheeger
