#include "qhg/meshio.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace qhg {

using nlohmann::json;

Mesh load_mesh_json(const std::string& text) {
    json j = json::parse(text);
    const int T = j.at("n_tets").get<int>();
    if (T <= 0) throw std::invalid_argument("mesh json: n_tets must be positive");

    auto moduli = j.at("moduli");
    auto orientations = j.at("orientations");
    if (static_cast<int>(moduli.size()) != T || static_cast<int>(orientations.size()) != T)
        throw std::invalid_argument("mesh json: moduli/orientations must list every tet");

    std::vector<FlatChargedTet> tets;
    for (int t = 0; t < T; ++t) {
        cplx w0(moduli[t].at(0).get<double>(), moduli[t].at(1).get<double>());
        std::array<int, 3> f{0, 0, 0}, c{0, 0, 1};
        if (j.contains("flattenings"))
            for (int k = 0; k < 3; ++k) f[k] = j["flattenings"].at(t).at(k).get<int>();
        if (j.contains("charges"))
            for (int k = 0; k < 3; ++k) c[k] = j["charges"].at(t).at(k).get<int>();
        tets.emplace_back(w0, f, c, orientations[t].get<int>());
    }

    std::vector<Gluing> gluings;
    for (const auto& g : j.at("gluings")) {
        Gluing gl;
        gl.tet_a = g.at(0).get<int>();
        gl.face_a = g.at(1).get<int>();
        gl.tet_b = g.at(2).get<int>();
        gl.face_b = g.at(3).get<int>();
        for (int k = 0; k < 3; ++k) gl.perm[k] = g.at(4).at(k).get<int>();
        gluings.push_back(gl);
    }

    std::set<int> ham;
    if (j.contains("hamiltonian_edges"))
        for (const auto& e : j["hamiltonian_edges"]) ham.insert(e.get<int>());

    return Mesh(std::move(tets), std::move(gluings), std::move(ham));
}

Mesh load_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mesh file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_mesh_json(text);
}

std::string save_mesh_json(const Mesh& m) {
    json j;
    j["n_tets"] = m.n_tets();
    json gl = json::array();
    for (const Gluing& g : m.gluings())
        gl.push_back({g.tet_a, g.face_a, g.tet_b, g.face_b, {g.perm[0], g.perm[1], g.perm[2]}});
    j["gluings"] = gl;
    json mods = json::array(), fs = json::array(), cs = json::array(), sb = json::array();
    for (const FlatChargedTet& t : m.tets()) {
        mods.push_back({t.w[0].real(), t.w[0].imag()});
        fs.push_back({t.f[0], t.f[1], t.f[2]});
        cs.push_back({t.c[0], t.c[1], t.c[2]});
        sb.push_back(t.branching.b_sign);
    }
    j["moduli"] = mods;
    j["flattenings"] = fs;
    j["charges"] = cs;
    j["orientations"] = sb;
    if (!m.ham_edges().empty())
        j["hamiltonian_edges"] = std::vector<int>(m.ham_edges().begin(), m.ham_edges().end());
    return j.dump(2);
}

}  // namespace qhg
