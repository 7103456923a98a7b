#include <gtest/gtest.h>

#include <sstream>

#include "so3topo/ball_chart.hpp"
#include "so3topo/io.hpp"
#include "test_support.hpp"

namespace so3 {
namespace {

using testing::axis_loop;
using testing::kPi;

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header) {
  std::istringstream in(text);
  std::getline(in, *header);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

TEST(PathJson, RoundTrip) {
  const Loop loop = random_loop(3, 3);
  const PathDocument doc = parse_path_json(to_path_json(loop));
  ASSERT_EQ(doc.path.size(), loop.size());
  for (std::size_t i = 0; i < loop.size(); ++i) {
    EXPECT_LT((doc.path[i].coeffs() - loop.path()[i].coeffs()).norm(), 1e-15);
  }
  ASSERT_TRUE(doc.basepoint.has_value());
  EXPECT_EQ(classify(doc.to_loop()), classify(loop));
}

TEST(PathJson, BasepointIsOptional) {
  const PathDocument doc = parse_path_json(R"({"samples": [[1,0,0,0],[1,0,0,0]]})");
  EXPECT_FALSE(doc.basepoint.has_value());
  EXPECT_EQ(doc.to_loop().basepoint().matrix(), Mat3::Identity());
}

TEST(PathJson, RejectsMalformedInput) {
  EXPECT_THROW(parse_path_json(R"({"samples": [[1,0,0,0],)"), InvalidInput);
  EXPECT_THROW(parse_path_json(R"([1,2])"), InvalidInput);
  EXPECT_THROW(parse_path_json(R"({"samples": [[1,0,0,0]]})"), InvalidInput);
  EXPECT_THROW(parse_path_json(R"({"samples": [[1,0,0],[1,0,0,0]]})"), InvalidInput);
  EXPECT_THROW(parse_path_json(R"({"samples": [[0,0,0,0],[1,0,0,0]]})"), InvalidInput);
  EXPECT_THROW(parse_path_json(R"({"samples": [["a",0,0,0],[1,0,0,0]]})"), InvalidInput);
  EXPECT_THROW(parse_path_json(R"({"samples": [[1,0,0,0],[0,1,0,0]]})").to_loop(), InvalidInput);
}

TEST(GridCsv, WriteThenRead) {
  const Loop twice = concat(axis_loop(Vec3::UnitZ(), 2 * kPi), axis_loop(Vec3::UnitZ(), 2 * kPi));
  const HomotopyGrid grid = contract(twice, 2);
  std::stringstream buffer;
  write_grid_csv(buffer, grid);
  std::string first_line;
  std::getline(std::stringstream(buffer.str()) >> std::ws, first_line);
  EXPECT_EQ(first_line, "s,t,w,x,y,z");
  const HomotopyGrid back = read_grid_csv(buffer);
  ASSERT_EQ(back.rows(), grid.rows());
  ASSERT_EQ(back.cols(), grid.cols());
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.nodes().size(); ++i) {
    worst = std::max(worst, (back.nodes()[i].coeffs() - grid.nodes()[i].coeffs()).norm());
  }
  EXPECT_LT(worst, 1e-15);
  EXPECT_TRUE(verify_homotopy(back, twice).passed);
}

TEST(GridCsv, RejectsIncompleteGrids) {
  std::stringstream missing("s,t,w,x,y,z\n0,0,1,0,0,0\n0,1,1,0,0,0\n1,0,1,0,0,0\n");
  EXPECT_THROW(read_grid_csv(missing), InvalidInput);
  std::stringstream header("s,t,q\n");
  EXPECT_THROW(read_grid_csv(header), InvalidInput);
}

TEST(ChartCsv, BallOfIdentityPath) {
  std::stringstream out;
  write_ball_chart_csv(out, constant_loop(RotationMatrixd::identity(), 4).path());
  std::string header;
  const auto rows = parse_csv(out.str(), &header);
  EXPECT_EQ(header, "i,vx,vy,vz");
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) EXPECT_EQ(Vec3(r[1], r[2], r[3]), Vec3::Zero());
}

TEST(ChartCsv, BallImageOfAFullTurn) {
  // Expected values: to_ball applied sample by sample.
  const Loop loop = axis_loop(Vec3::UnitZ(), 2 * kPi, 101);
  std::stringstream out;
  write_ball_chart_csv(out, loop.path());
  std::string header;
  const auto rows = parse_csv(out.str(), &header);
  ASSERT_EQ(rows.size(), 101u);
  int jumps = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Vec3 v(rows[i][1], rows[i][2], rows[i][3]);
    EXPECT_LT((v - to_ball(loop.path()[i]).vector()).norm(), 1e-15);
    EXPECT_LT(std::hypot(v.x(), v.y()), 1e-12);
    if (i > 0 && std::abs(v.z() - rows[i - 1][3]) > kPi / 2) ++jumps;
    if (i <= 50) EXPECT_GE(v.z(), 0.0);
    if (i > 50 && i < 100) EXPECT_LT(v.z(), 0.0);
  }
  EXPECT_NEAR(rows[50][3], kPi, 1e-12);
  EXPECT_NEAR(rows[51][3], -kPi + 2 * kPi / 100, 1e-12);
  EXPECT_EQ(jumps, 1);
}

TEST(ChartCsv, TorusNamesFirstSingularSample) {
  const RotationPath path = axis_rotation_path(Vec3::UnitX(), 2 * kPi, 5);  // sample 2 is the half turn
  std::stringstream out;
  try {
    write_torus_chart_csv(out, path);
    FAIL() << "expected SouthPoleSingular";
  } catch (const SouthPoleSingular& e) {
    EXPECT_NE(std::string(e.what()).find("sample 2"), std::string::npos);
  }
  EXPECT_TRUE(out.str().empty());
}

TEST(ChartCsv, TorusColumns) {
  std::stringstream out;
  write_torus_chart_csv(out, axis_rotation_path(Vec3::UnitZ(), 1.0, 3));
  std::string header;
  const auto rows = parse_csv(out.str(), &header);
  EXPECT_EQ(header, "i,lambda,alpha,phi,disk_x,disk_y");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(rows[2][3], 1.0, 1e-15);
  EXPECT_EQ(rows[2][4], 0.0);
}

}  // namespace
}  // namespace so3
