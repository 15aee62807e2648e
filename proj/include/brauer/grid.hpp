#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "brauer/lattice.hpp"

namespace brauer {

/// (f, λ; f1, f2; λ1, λ2) for the restriction B_f ↓ B_f1 × B_f2.
struct GridSignature {
    int f = 0;
    Shape lambda;
    int f1 = 0, f2 = 0;
    Shape lambda1, lambda2;

    /// Throws std::invalid_argument unless f1 + f2 = f, f1, f2 >= 1 and every
    /// shape lies in its Υ set.
    void validate() const;

    /// Generator indices acting inside the subalgebra: {1..f1-1} ∪ {f1+1..f-1}.
    std::vector<int> layer_indices() const;
    bool is_layer_index(int i) const;

    /// "(3,[1];2,1,[],[1])"
    std::string to_string() const;

    friend bool operator==(const GridSignature &, const GridSignature &) = default;
};

struct LatticePair {
    PermutationLattice w1, w2;
    std::string to_string() const { return w1.to_string() + "," + w2.to_string(); }
    friend bool operator==(const LatticePair &, const LatticePair &) = default;
};

/// ⟨w; w1, w2⟩
struct GridNode {
    PermutationLattice w;
    LatticePair pair;
    std::string to_string() const { return "<" + w.to_string() + ";" + pair.to_string() + ">"; }
    friend bool operator==(const GridNode &, const GridNode &) = default;
};

enum class CouplingMode { Plain, Bar };

/// The factor of a pair a generator index acts on, and the local index there.
struct PairComponent {
    const PermutationLattice *lattice;
    int local_index;
    bool first;
};
PairComponent pair_component(const LatticePair &p, int i, int f1);

/// w12 ↔ⁱ w12' (Plain) or w12 ↔^ī w12' (Bar). The index is shifted by f1 on
/// the second factor. Throws std::out_of_range for i = f1 or i outside [1, f-1].
bool pair_coupled(const LatticePair &p, const LatticePair &q, int i, int f1, CouplingMode mode);

/// g_i acting on a pair: swap on the factor the index belongs to.
LatticePair pair_swap_action(const LatticePair &p, int i, int f1);

/// True when the pair is ī-coupled to itself.
bool pair_ibar_self(const LatticePair &p, int i, int f1);

/// n ↔ⁱ n': w ↔ⁱ w' and w12 ↔ⁱ w12'.
bool node_coupled(const GridNode &n, const GridNode &m, int i, int f1);

enum class Configuration { Crossing, HBridge, VBridge, Singlet };
inline constexpr std::array<Configuration, 4> kConfigurations = {Configuration::Crossing, Configuration::HBridge,
                                                                 Configuration::VBridge, Configuration::Singlet};
const char *to_string(Configuration c);

/// Crossing: neither w nor w12 is ī-self-coupled; HBridge: only w;
/// VBridge: only w12; Singlet: both.
Configuration classify_node(const GridNode &n, int i, int f1);

/// Lexicographic on (w, w1, w2) under compare_lattices.
std::strong_ordering compare_nodes(const GridNode &n, const GridNode &m);

struct GridLayer {
    int i = 0;
    /// Each i-coupling equivalence class as sorted node indices.
    std::vector<std::vector<std::size_t>> classes;
    /// class_of[node] = index into classes.
    std::vector<std::size_t> class_of;
    /// Edges between distinct coupled nodes, a < b, sorted.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<Configuration> tags;

    std::array<std::size_t, 4> histogram() const;
};

class SubductionGrid {
  public:
    const GridSignature &signature() const { return sig_; }
    const std::vector<GridNode> &nodes() const { return nodes_; }
    const std::vector<GridLayer> &layers() const { return layers_; }
    const GridLayer &layer(int i) const;

    const std::vector<PermutationLattice> &basis() const { return basis_; }
    const std::vector<PermutationLattice> &basis1() const { return basis1_; }
    const std::vector<PermutationLattice> &basis2() const { return basis2_; }

    /// Nodes are the product basis × basis1 × basis2 in nested order.
    std::size_t node_index(std::size_t a, std::size_t b1, std::size_t b2) const {
        return (a * basis1_.size() + b1) * basis2_.size() + b2;
    }
    std::size_t node_index(const GridNode &n) const;

    std::size_t edge_count() const;

    friend SubductionGrid build_grid(const GridSignature &sig);

  private:
    GridSignature sig_;
    std::vector<PermutationLattice> basis_, basis1_, basis2_;
    std::map<Word, std::size_t> index_, index1_, index2_;
    std::vector<GridNode> nodes_;
    std::vector<GridLayer> layers_;
};

SubductionGrid build_grid(const GridSignature &sig);

/// Undirected DOT graph; node labels are the serialized triples, edge labels
/// the generator index. When color_layer names a layer index, nodes are
/// shaped and coloured by their configuration in that layer.
std::string export_dot(const SubductionGrid &g, int color_layer = 0);

/// JSON dump: signature, ordered nodes, per-layer edges and tags.
std::string grid_to_json(const SubductionGrid &g);

} // namespace brauer
