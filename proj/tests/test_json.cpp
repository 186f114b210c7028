#include <stdexcept>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "rih/json_io.hpp"

using namespace rih;

TEST_CASE("tiling json round trip") {
  const Tiling w = striped_witness(LatticeSpec(3, 3), 2, 0);
  const Json j = to_json(w);
  CHECK(j["copies"].size() == 2);
  CHECK(j["copies"][0][0] == Json::array({0, 0}));
  const Tiling back = tiling_from_json(j);
  CHECK(back.copy1 == w.copy1);
  CHECK(back.copy2 == w.copy2);
  CHECK(back.spec == w.spec);
}

TEST_CASE("malformed tilings are rejected") {
  Json j = to_json(striped_witness(LatticeSpec(2, 3), 0, 1));
  j["copies"][0][0] = Json::array({3, 0});
  CHECK_THROWS(tiling_from_json(j));
  j = to_json(striped_witness(LatticeSpec(2, 3), 0, 1));
  j["copies"][1].erase(0);
  CHECK_THROWS(tiling_from_json(j));
}

TEST_CASE("tile names") {
  CHECK(tile_name(Tile{Color::yellow, 2}) == "y2");
  CHECK(tile_from_name("b1") == Tile{Color::blue, 1});
  CHECK_THROWS(tile_from_name("g1"));
}

TEST_CASE("energy report schema") {
  const auto rep = ground_energy_search(LatticeSpec(2, 3), toy_plug("zero"));
  const Json j = to_json(rep);
  CHECK(j["schema"] == "rih.energy_report/1");
  CHECK(j["global_min"] == 36.0);
  CHECK(j["records"].size() == rep.records.size());
  CHECK(j.contains("stats"));
}

TEST_CASE("fixture directory: tilings with expected sector energies") {
  const std::filesystem::path dir = RIH_FIXTURE_DIR;
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    const Json f = Json::parse(in);
    const Tiling t = tiling_from_json(f.at("tiling"));
    const SectorEnergy e = tile_sector_energy(t, toy_plug(f.at("plug").get<std::string>()));
    const Json& x = f.at("expected");
    INFO(entry.path().filename().string());
    CHECK(e.classical == doctest::Approx(x.at("classical").get<double>()).epsilon(1e-12));
    CHECK(e.epr == doctest::Approx(x.at("epr").get<double>()).epsilon(1e-10));
    CHECK(e.embedded2d == doctest::Approx(x.at("embedded2d").get<double>()).epsilon(1e-10));
    CHECK(e.total == doctest::Approx(x.at("total").get<double>()).epsilon(1e-10));
    ++seen;
  }
  CHECK(seen >= 4);
}
