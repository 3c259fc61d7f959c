#include <string>

#include <gtest/gtest.h>

#include "honeypol/errors.hpp"
#include "honeypol/report.hpp"

using namespace honeypol;

namespace {

std::string fixture(const char *name) { return std::string(HONEYPOL_FIXTURES) + "/" + name; }

SweepReport sample() {
  SweepReport r;
  r.density = 2.0;
  r.rows.push_back({0.01, 50.000000000001L, 50.0L, 1.25e-300L, 1e-12L, 2e-12L, "dual-agm", true, true});
  r.rows.push_back({1.0 / 3.0, 3.1L, 2.9L, 0.2L, 1e-20L, 1e-20L, "both", false, false});
  return r;
}

}  // namespace

TEST(Report, CsvLayout) {
  const std::string csv = sweep_to_csv(sample());
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "alpha,hex_value,honey_value,gap,regime,certified");
  EXPECT_NE(csv.find("0.333333333333,3.1,2.9,0.2,both,false\n"), std::string::npos);
  EXPECT_NE(csv.find("1.25e-300"), std::string::npos);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(csv.back(), '\n');
}

TEST(Report, JsonRoundTripKeepsLongDoublePrecision) {
  const SweepReport in = sample();
  const SweepReport out = sweep_from_json(sweep_to_json(in));
  EXPECT_EQ(out.density, in.density);
  ASSERT_EQ(out.rows.size(), in.rows.size());
  for (std::size_t i = 0; i < in.rows.size(); ++i) {
    EXPECT_EQ(out.rows[i].alpha, in.rows[i].alpha);
    EXPECT_NEAR(static_cast<double>((out.rows[i].hex_value - in.rows[i].hex_value) /
                                    in.rows[i].hex_value),
                0.0, 1e-16);
    EXPECT_NEAR(static_cast<double>(out.rows[i].gap / in.rows[i].gap), 1.0, 1e-16);
    EXPECT_EQ(out.rows[i].regime, in.rows[i].regime);
    EXPECT_EQ(out.rows[i].certified, in.rows[i].certified);
    EXPECT_EQ(out.rows[i].converged, in.rows[i].converged);
  }
  // 17 significant digits, so re-emitting is stable
  EXPECT_EQ(sweep_to_json(out), sweep_to_json(in));
}

TEST(Report, JsonBeyondDoubleRange) {
  SweepReport r;
  r.rows.push_back({0.01, 1e-400L, 1e-500L, 1e-391L, 0, 0, "dual-agm", true, true});
  const SweepReport back = sweep_from_json(sweep_to_json(r));
  EXPECT_GT(back.rows[0].gap, 0.0L);
  EXPECT_NEAR(static_cast<double>(back.rows[0].gap / 1e-391L), 1.0, 1e-15);
}

TEST(Report, MalformedSweepJson) {
  EXPECT_THROW(sweep_from_json("{"), ValidationError);
  EXPECT_THROW(sweep_from_json("{\"density\": 1}"), ValidationError);
}

TEST(Report, ConfigJsonRoundTrip) {
  const PeriodicConfiguration h = honeycomb(3.0);
  const PeriodicConfiguration back = config_from_json(config_to_json(h));
  EXPECT_EQ(back.size(), 2u);
  EXPECT_EQ(back.lattice().basis().m11, h.lattice().basis().m11);
  EXPECT_EQ(back.shifts()[1].y, h.shifts()[1].y);
}

TEST(Report, FixturesMatchBuiltInStructures) {
  const PeriodicConfiguration hex = load_custom_structure(fixture("hex_density1.json"));
  const Lattice2 ref = hexagonal_lattice(1.0);
  EXPECT_EQ(hex.size(), 1u);
  EXPECT_TRUE(generators_in_lattice(hex.lattice().basis(), ref.basis(), 1e-12));
  EXPECT_TRUE(generators_in_lattice(ref.basis(), hex.lattice().basis(), 1e-12));

  const PeriodicConfiguration honey = load_custom_structure(fixture("honeycomb_density1.json"));
  const PeriodicConfiguration h = honeycomb(1.0);
  EXPECT_EQ(honey.size(), 2u);
  EXPECT_TRUE(generators_in_lattice(honey.lattice().basis(), h.lattice().basis(), 1e-12));
  EXPECT_NEAR(torus_distance(h.lattice(), honey.shifts()[1], h.shifts()[1]), 0.0, 1e-12);
}

TEST(Report, InvalidStructures) {
  try {
    load_custom_structure(fixture("shift_is_lattice_vector.json"));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError &e) {
    EXPECT_NE(std::string(e.what()).find("shifts 0 and 1"), std::string::npos);
  }
  EXPECT_THROW(load_custom_structure(fixture("singular_basis.json")), ValidationError);
  EXPECT_THROW(load_custom_structure(fixture("no_such_file.json")), IoError);
  EXPECT_THROW(config_from_json("[1, 2]"), ValidationError);
  EXPECT_THROW(config_from_json("{\"basis\": [[1, 0]], \"shifts\": [[0, 0]]}"), ValidationError);
  EXPECT_THROW(config_from_json("{\"basis\": [[1, 0], [0, 1]], \"shifts\": []}"), ValidationError);
  EXPECT_THROW(config_from_json("{\"basis\": [[1, 0], [0, \"x\"]], \"shifts\": [[0, 0]]}"),
               ValidationError);
  EXPECT_THROW(config_from_json("not json"), ValidationError);
}

TEST(Report, FormatSignificant) {
  EXPECT_EQ(format_significant(0.1L, 12), "0.1");
  EXPECT_EQ(format_significant(1.0L / 3.0L, 5), "0.33333");
  EXPECT_EQ(format_significant(1e-391L, 3), "1e-391");
}
