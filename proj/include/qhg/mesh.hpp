#pragma once
// Singular branched triangulations of 3-pseudomanifolds: face pairings,
// edge and vertex classes, vertex-link classification, global totals
// W/L/C per edge class, and weights of closed normal paths.

#include <array>
#include <set>
#include <string>
#include <vector>

#include "qhg/tetra.hpp"

namespace qhg {

// Face f of a tetrahedron is the one opposite vertex f; its vertices in
// increasing order.
std::array<int, 3> face_verts(int f);

// Sign of a permutation of {0,1,2,3}.
int perm_sign4(const std::array<int, 4>& p);

// Pairing of face face_a of tet_a with face face_b of tet_b.  perm maps
// positions in face_verts(face_a) to positions in face_verts(face_b):
// vertex face_verts(face_a)[k] is identified with
// vertex face_verts(face_b)[perm[k]].
struct Gluing {
    int tet_a, face_a, tet_b, face_b;
    std::array<int, 3> perm{0, 1, 2};
};

enum class VertexKind { manifold, toroidal, other, boundary };

struct VertexClassInfo {
    VertexKind kind;
    int euler = 0;  // Euler characteristic of the link (closed links only)
    bool closed = false;
    int corners = 0;  // tetrahedron corners in the class
};

struct EdgeInstance {
    int tet, a, b;  // edge {a,b} of tet, a < b
};

// One step of a closed normal path in the link of vertex `vertex` of tet
// `tet`: the path enters the corner through face face_in and leaves
// through face_out (both faces contain the vertex).
struct PathStep {
    int tet, vertex, face_in, face_out;
};

struct NormalPath {
    std::vector<PathStep> steps;
};

enum class WeightKind { flattening, charge, log_derivative };

struct ValidationReport {
    struct Item {
        std::string what;
        int edge_class;
        double residual;
    };
    std::vector<Item> violations;
    bool ok() const { return violations.empty(); }
};

class Mesh {
  public:
    Mesh(std::vector<FlatChargedTet> tets, std::vector<Gluing> gluings,
         std::set<int> ham_edges = {});

    const std::vector<FlatChargedTet>& tets() const { return tets_; }
    std::vector<FlatChargedTet>& tets() { return tets_; }
    const std::vector<Gluing>& gluings() const { return gluings_; }
    const std::set<int>& ham_edges() const { return ham_; }

    int n_tets() const { return static_cast<int>(tets_.size()); }
    bool face_glued(int tet, int face) const;
    // Follow the gluing of (tet, face): returns (tet', face', vertex')
    // for a vertex v lying on the face.  Errors if unglued.
    std::array<int, 3> glue_vertex(int tet, int face, int v) const;

    int n_edge_classes() const { return n_edge_classes_; }
    int edge_class(int tet, int a, int b) const;
    const std::vector<EdgeInstance>& edge_members(int cls) const;
    bool edge_interior(int cls) const;

    int n_vertex_classes() const { return n_vertex_classes_; }
    int vertex_class(int tet, int v) const;

    cplx edge_total_modulus(int cls) const;
    cplx edge_total_log_branch(int cls) const;
    long long edge_total_charge(int cls) const;

    std::vector<VertexClassInfo> classify_vertices() const;

    ValidationReport validate_I(double tol = 1e-9) const;
    ValidationReport validate_flattened(double tol = 1e-9) const;
    ValidationReport validate_charged() const;

    // Weight of a closed normal path.  Each step contributes the value at
    // the tetrahedron edge cut off by the corner, multiplied by a side
    // sign read from the (branching-twisted) cyclic order of the corner
    // and, except for charges, by the orientation sign *_b.
    cplx path_weight(const NormalPath& p, WeightKind kind) const;

    void check_path(const NormalPath& p) const;  // throws if invalid

  private:
    std::vector<FlatChargedTet> tets_;
    std::vector<Gluing> gluings_;
    std::set<int> ham_;

    std::vector<std::array<int, 4>> face_gluing_;  // gluing index or -1
    std::vector<int> edge_class_of_;               // 6 per tet
    int n_edge_classes_ = 0;
    std::vector<std::vector<EdgeInstance>> edge_members_;
    std::vector<bool> edge_interior_;
    std::vector<int> vertex_class_of_;  // 4 per tet
    int n_vertex_classes_ = 0;

    void derive();
};

// Cyclic order of the corner of tet t at vertex v, as the three face
// labels containing v; reversed when the branching order disagrees with
// the orientation.
std::array<int, 3> corner_cyclic(const Mesh& m, int t, int v);

// The opposite edge endpoint and side sign of one path step.
std::pair<int, int> step_side(const Mesh& m, const PathStep& s);

}  // namespace qhg
