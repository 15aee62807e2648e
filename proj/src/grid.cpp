#include "brauer/grid.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "brauer/gt_module.hpp"
#include "json.hpp"

namespace brauer {

void GridSignature::validate() const {
    if (f1 < 1 || f2 < 1)
        throw std::invalid_argument("split orders must be positive, got f1=" + std::to_string(f1) +
                                    " f2=" + std::to_string(f2));
    if (f1 + f2 != f)
        throw std::invalid_argument("f1 + f2 = " + std::to_string(f1 + f2) + " differs from f = " + std::to_string(f));
    if (!lambda.in_upsilon(f))
        throw std::invalid_argument(lambda.to_string() + " is not in Υ_" + std::to_string(f));
    if (!lambda1.in_upsilon(f1))
        throw std::invalid_argument(lambda1.to_string() + " is not in Υ_" + std::to_string(f1));
    if (!lambda2.in_upsilon(f2))
        throw std::invalid_argument(lambda2.to_string() + " is not in Υ_" + std::to_string(f2));
}

std::vector<int> GridSignature::layer_indices() const {
    std::vector<int> out;
    for (int i = 1; i < f; ++i)
        if (i != f1)
            out.push_back(i);
    return out;
}

bool GridSignature::is_layer_index(int i) const { return i >= 1 && i < f && i != f1; }

std::string GridSignature::to_string() const {
    return "(" + std::to_string(f) + "," + lambda.to_string() + ";" + std::to_string(f1) + "," + std::to_string(f2) +
           "," + lambda1.to_string() + "," + lambda2.to_string() + ")";
}

PairComponent pair_component(const LatticePair &p, int i, int f1) {
    const int f = f1 + p.w2.order();
    if (i < 1 || i >= f || i == f1)
        throw std::out_of_range("generator index " + std::to_string(i) + " does not act inside B_" +
                                std::to_string(f1) + " x B_" + std::to_string(p.w2.order()));
    if (i < f1)
        return {&p.w1, i, true};
    return {&p.w2, i - f1, false};
}

bool pair_coupled(const LatticePair &p, const LatticePair &q, int i, int f1, CouplingMode mode) {
    const auto a = pair_component(p, i, f1);
    const auto b = pair_component(q, i, f1);
    const auto &other_p = a.first ? p.w2 : p.w1;
    const auto &other_q = a.first ? q.w2 : q.w1;
    if (!(other_p == other_q))
        return false;
    return mode == CouplingMode::Plain ? i_coupled(*a.lattice, *b.lattice, a.local_index)
                                       : ibar_coupled(*a.lattice, *b.lattice, a.local_index);
}

LatticePair pair_swap_action(const LatticePair &p, int i, int f1) {
    const auto c = pair_component(p, i, f1);
    if (c.first)
        return {swap_action(p.w1, c.local_index), p.w2};
    return {p.w1, swap_action(p.w2, c.local_index)};
}

bool pair_ibar_self(const LatticePair &p, int i, int f1) {
    const auto c = pair_component(p, i, f1);
    return ibar_self(*c.lattice, c.local_index);
}

bool node_coupled(const GridNode &n, const GridNode &m, int i, int f1) {
    return i_coupled(n.w, m.w, i) && pair_coupled(n.pair, m.pair, i, f1, CouplingMode::Plain);
}

const char *to_string(Configuration c) {
    switch (c) {
    case Configuration::Crossing:
        return "crossing";
    case Configuration::HBridge:
        return "hbridge";
    case Configuration::VBridge:
        return "vbridge";
    case Configuration::Singlet:
        return "singlet";
    }
    return "?";
}

Configuration classify_node(const GridNode &n, int i, int f1) {
    const bool w_flip = ibar_self(n.w, i);
    const bool p_flip = pair_ibar_self(n.pair, i, f1);
    if (w_flip && p_flip)
        return Configuration::Singlet;
    if (w_flip)
        return Configuration::HBridge;
    if (p_flip)
        return Configuration::VBridge;
    return Configuration::Crossing;
}

std::strong_ordering compare_nodes(const GridNode &n, const GridNode &m) {
    if (auto c = compare_lattices(n.w, m.w); c != 0)
        return c;
    if (auto c = compare_lattices(n.pair.w1, m.pair.w1); c != 0)
        return c;
    return compare_lattices(n.pair.w2, m.pair.w2);
}

std::array<std::size_t, 4> GridLayer::histogram() const {
    std::array<std::size_t, 4> h{};
    for (auto t : tags)
        ++h[static_cast<std::size_t>(t)];
    return h;
}

const GridLayer &SubductionGrid::layer(int i) const {
    for (const auto &l : layers_)
        if (l.i == i)
            return l;
    throw std::out_of_range("no layer " + std::to_string(i) + " in grid " + sig_.to_string());
}

std::size_t SubductionGrid::node_index(const GridNode &n) const {
    auto a = index_.find(n.w.word());
    auto b = index1_.find(n.pair.w1.word());
    auto c = index2_.find(n.pair.w2.word());
    if (a == index_.end() || b == index1_.end() || c == index2_.end())
        throw std::invalid_argument("node " + n.to_string() + " is not in grid " + sig_.to_string());
    return node_index(a->second, b->second, c->second);
}

std::size_t SubductionGrid::edge_count() const {
    std::size_t n = 0;
    for (const auto &l : layers_)
        n += l.edges.size();
    return n;
}

namespace {

// Key of the i-coupling class: every entry outside positions i, i+1 of w and
// of the acted-on factor, plus the untouched factor.
constexpr int kNoMask = -2;

std::vector<int> class_key(const GridNode &n, int i, int f1) {
    std::vector<int> key;
    auto push_masked = [&](const PermutationLattice &w, int skip) {
        for (int h = 1; h <= w.order(); ++h)
            key.push_back(h == skip || h == skip + 1 ? 0 : w.at(h));
        key.push_back(0x7fffffff);
    };
    push_masked(n.w, i);
    if (i < f1) {
        push_masked(n.pair.w1, i);
        push_masked(n.pair.w2, kNoMask);
    } else {
        push_masked(n.pair.w1, kNoMask);
        push_masked(n.pair.w2, i - f1);
    }
    return key;
}

} // namespace

SubductionGrid build_grid(const GridSignature &sig) {
    sig.validate();
    SubductionGrid g;
    g.sig_ = sig;
    g.basis_ = enumerate_lattices(sig.f, sig.lambda);
    g.basis1_ = enumerate_lattices(sig.f1, sig.lambda1);
    g.basis2_ = enumerate_lattices(sig.f2, sig.lambda2);
    for (std::size_t k = 0; k < g.basis_.size(); ++k)
        g.index_.emplace(g.basis_[k].word(), k);
    for (std::size_t k = 0; k < g.basis1_.size(); ++k)
        g.index1_.emplace(g.basis1_[k].word(), k);
    for (std::size_t k = 0; k < g.basis2_.size(); ++k)
        g.index2_.emplace(g.basis2_[k].word(), k);
    for (const auto &w : g.basis_)
        for (const auto &w1 : g.basis1_)
            for (const auto &w2 : g.basis2_)
                g.nodes_.push_back(GridNode{w, LatticePair{w1, w2}});

    for (int i : sig.layer_indices()) {
        GridLayer layer;
        layer.i = i;
        layer.class_of.resize(g.nodes_.size());
        std::map<std::vector<int>, std::size_t> by_key;
        for (std::size_t k = 0; k < g.nodes_.size(); ++k) {
            auto [it, fresh] = by_key.emplace(class_key(g.nodes_[k], i, sig.f1), layer.classes.size());
            if (fresh)
                layer.classes.emplace_back();
            layer.classes[it->second].push_back(k);
            layer.class_of[k] = it->second;
            layer.tags.push_back(classify_node(g.nodes_[k], i, sig.f1));
        }
        for (const auto &cls : layer.classes)
            for (std::size_t a = 0; a < cls.size(); ++a)
                for (std::size_t b = a + 1; b < cls.size(); ++b)
                    layer.edges.emplace_back(cls[a], cls[b]);
        std::sort(layer.edges.begin(), layer.edges.end());
        g.layers_.push_back(std::move(layer));
    }
    return g;
}

std::string export_dot(const SubductionGrid &g, int color_layer) {
    const GridLayer *colored = nullptr;
    if (color_layer != 0)
        colored = &g.layer(color_layer);
    std::ostringstream os;
    os << "graph subduction {\n";
    os << "  label=\"" << g.signature().to_string() << "\";\n";
    os << "  node [fontname=\"monospace\"];\n";
    for (std::size_t k = 0; k < g.nodes().size(); ++k) {
        os << "  n" << k << " [label=\"" << g.nodes()[k].to_string() << "\"";
        if (colored) {
            static constexpr const char *shapes[] = {"ellipse", "box", "diamond", "doublecircle"};
            static constexpr const char *colors[] = {"black", "blue", "red", "darkgreen"};
            const auto t = static_cast<std::size_t>(colored->tags[k]);
            os << ", shape=" << shapes[t] << ", color=" << colors[t] << ", tooltip=\"" << to_string(colored->tags[k])
               << "\"";
        }
        os << "];\n";
    }
    for (const auto &layer : g.layers())
        for (auto [a, b] : layer.edges)
            os << "  n" << a << " -- n" << b << " [label=\"" << layer.i << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string grid_to_json(const SubductionGrid &g) {
    nlohmann::json j;
    const auto &s = g.signature();
    j["signature"] = {{"f", s.f},   {"shape", s.lambda.to_string()},   {"f1", s.f1},
                      {"f2", s.f2}, {"shape1", s.lambda1.to_string()}, {"shape2", s.lambda2.to_string()}};
    auto nodes = nlohmann::json::array();
    for (const auto &n : g.nodes())
        nodes.push_back(n.to_string());
    j["nodes"] = std::move(nodes);
    auto layers = nlohmann::json::array();
    for (const auto &l : g.layers()) {
        nlohmann::json lj;
        lj["i"] = l.i;
        auto edges = nlohmann::json::array();
        for (auto [a, b] : l.edges)
            edges.push_back({a, b});
        lj["edges"] = std::move(edges);
        auto tags = nlohmann::json::array();
        for (auto t : l.tags)
            tags.push_back(to_string(t));
        lj["tags"] = std::move(tags);
        layers.push_back(std::move(lj));
    }
    j["layers"] = std::move(layers);
    return j.dump(2);
}

} // namespace brauer
