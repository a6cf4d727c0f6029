#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "adsgeom/barrier.hpp"
#include "adsgeom/solver.hpp"
#include "adsgeom/torus.hpp"

namespace adsgeom {

// {"grid": {"n_r", "n_phi"}, "f": [...]} with f row-major in the ring index.
std::string surface_to_json(const GraphSurface& s);
GraphSurface surface_from_json(const std::string& text);

void write_obj(std::ostream& os, const PolySurfaceMesh& mesh);
std::string mesh_to_json(const PolySurfaceMesh& mesh);
PolySurfaceMesh mesh_from_json(const std::string& text);

// Valid nodes as vertices, grid cells with four valid corners as two triangles.
void write_height_field_obj(std::ostream& os, const HeightField& f);

std::string certificate_to_json(const BarrierCertificate& c);

void write_foliation_csv(std::ostream& os, const std::vector<FoliationRow>& rows);

std::string solve_report_to_json(const SolveReport& r);
void write_u_csv(std::ostream& os, const TorusGraph& s);

struct BarrierConfig {
  TrigSpec curve;
  double lambda_max = 0.8;
  int n_phi = 64;
  BarrierParams params;
};

// {"curve": {"a0", "a", "b", "lambda_max", "n"}, "eps", "delta", "eta",
// "eps2", "grid": {"nx", "ny"}}; missing keys keep defaults. Throws
// InvalidArgument on malformed input.
BarrierConfig barrier_config_from_json(const std::string& text, BarrierConfig base = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// %.17g
std::string fmt_double(double v);

}  // namespace adsgeom
