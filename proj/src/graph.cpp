#include "dyncolor/graph.hpp"

#include "dyncolor/error.hpp"

#include <algorithm>
#include <string>

namespace dyncolor {

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges)
{
    Graph g(vertex_count);
    for (const Edge& e : edges)
        g.insert_edge(e.u, e.v);
    return g;
}

void Graph::check_vertex(Vertex v) const
{
    if (v >= adjacency_.size())
        throw Error(Errc::vertex_out_of_range,
                    "vertex " + std::to_string(v) + " with n = " + std::to_string(adjacency_.size()));
}

bool Graph::has_edge(Vertex u, Vertex v) const
{
    if (u >= adjacency_.size() || v >= adjacency_.size())
        return false;
    const auto& a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
    const Vertex other = adjacency_[u].size() <= adjacency_[v].size() ? v : u;
    return std::find(a.begin(), a.end(), other) != a.end();
}

void Graph::insert_edge(Vertex u, Vertex v)
{
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        throw Error(Errc::self_loop, "vertex " + std::to_string(u));
    if (has_edge(u, v))
        throw Error(Errc::duplicate_edge, "{" + std::to_string(u) + ", " + std::to_string(v) + "}");
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
    ++edge_count_;
    max_degree_ = std::max({max_degree_, adjacency_[u].size(), adjacency_[v].size()});
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < adjacency_.size(); ++u) {
        std::vector<Vertex> higher;
        for (Vertex v : adjacency_[u])
            if (v > u)
                higher.push_back(v);
        std::sort(higher.begin(), higher.end());
        for (Vertex v : higher)
            out.push_back({u, v});
    }
    return out;
}

} // namespace dyncolor
