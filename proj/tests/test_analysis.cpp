#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "l4scc/analysis.hpp"
#include "l4scc/error.hpp"
#include "oracles.hpp"

namespace l4scc {
namespace {

TEST(Table1, DefaultRows) {
  const auto rows = table1(200e-3, 2e-3, default_queue_cases());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].label, "Drop Tail");
  EXPECT_NEAR(rows[0].imbalance, 400.0 / 202.0, 1e-12);
  EXPECT_NEAR(rows[1].imbalance, 215.0 / 17.0, 1e-12);
  EXPECT_NEAR(rows[2].imbalance, 200.5 / 2.5, 1e-12);
  EXPECT_EQ(std::lround(rows[0].imbalance), 2);
  EXPECT_EQ(std::lround(rows[1].imbalance), 13);
  EXPECT_EQ(std::lround(rows[2].imbalance), 80);
}

TEST(Table1, LimitsAndMonotonicity) {
  std::vector<QueueCase> cases;
  for (double q = 0.0; q < 100.0; q = q * 2.0 + 1e-6) cases.push_back({"q", q});
  const auto rows = table1(200e-3, 2e-3, cases);
  EXPECT_NEAR(rows.front().imbalance, 100.0, 1e-9);
  EXPECT_NEAR(rows.back().imbalance, 1.0, 0.01);
  for (std::size_t i = 1; i < rows.size(); ++i)
    EXPECT_LT(rows[i].imbalance, rows[i - 1].imbalance);
}

TEST(Table1, Errors) {
  EXPECT_THROW(table1(0.0, 2e-3, default_queue_cases()), DomainError);
  EXPECT_THROW(table1(1e-3, 2e-3, {{"neg", -1.0}}), DomainError);
}

TEST(RateImbalance, Comp5Examples) {
  EXPECT_NEAR(rate_imbalance_comp5(10e-6, 130e-3), 12.69, 0.01);
  const double oracle_ratio = oracle::comp5_f(1e-6, 2, 5e-4) / oracle::comp5_f(200e-3, 2, 5e-4);
  EXPECT_NEAR(rate_imbalance_comp5(1e-6, 200e-3), oracle_ratio, 1e-9 * oracle_ratio);
  EXPECT_NEAR(oracle_ratio, 80.33, 0.01);
}

TEST(Figures, IdFromInt) {
  EXPECT_EQ(figure_id_from_int(3), FigureId::f3);
  EXPECT_THROW(figure_id_from_int(0), DomainError);
  EXPECT_THROW(figure_id_from_int(6), DomainError);
}

TEST(Figures, SaturationGridMatchesBoundEverywhere) {
  const FigureSeries fig = figure_data(FigureId::f1);
  ASSERT_EQ(fig.curves.size(), 2u);
  for (std::size_t c = 0; c < 2; ++c) {
    const double v0 = c == 0 ? 1.0 : 2.0;
    EXPECT_EQ(fig.curves[c].rows.size(), 61u * 61u);
    for (const auto& row : fig.curves[c].rows) {
      const bool expected = row[1] < v0 * 12000.0 / row[0];
      EXPECT_EQ(row[2] == 1.0, expected);
    }
  }
}

TEST(Figures, UnsaturatedSignal) {
  const FigureSeries fig = figure_data(FigureId::f2);
  const auto& rows = fig.curves.at(0).rows;
  const auto at = [&](double p) {
    return std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r[0] == p; });
  };
  ASSERT_NE(at(0.5), rows.end());
  EXPECT_DOUBLE_EQ((*at(0.5))[1], 1.0);
  EXPECT_NEAR((*at(0.01))[1], 1.0 / 99.0, 1e-15);
  EXPECT_NEAR((*at(0.9999999))[1], 9999999.0, 0.5);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i][1], rows[i - 1][1]);
}

TEST(Figures, Compromise4Ratio) {
  const FigureSeries fig = figure_data(FigureId::f3);
  ASSERT_EQ(fig.curves.size(), 2u);
  const auto& marks = fig.curves[0].rows;
  const auto& packets = fig.curves[1].rows;
  const auto it = std::find_if(marks.begin(), marks.end(), [](const auto& r) { return r[0] == 1e9; });
  ASSERT_NE(it, marks.end());
  const std::size_t i = static_cast<std::size_t>(it - marks.begin());
  EXPECT_NEAR((*it)[1], 121.54e-6, 0.01e-6);
  EXPECT_NEAR(packets[i][1], 12e-6, 1e-15);
  EXPECT_NEAR((*it)[1] / packets[i][1], 10.13, 0.01);
}

TEST(Figures, Compromise5Curves) {
  const FigureSeries f4 = figure_data(FigureId::f4);
  const FigureSeries f5 = figure_data(FigureId::f5);
  const auto& rtt_rows = f4.curves.at(0).rows;
  const auto& sec_rows = f5.curves.at(0).rows;
  ASSERT_EQ(rtt_rows.size(), sec_rows.size());
  EXPECT_TRUE(std::any_of(rtt_rows.begin(), rtt_rows.end(), [](const auto& r) { return r[0] == 5e-4; }));
  for (std::size_t i = 0; i < rtt_rows.size(); ++i) {
    const double rtt = rtt_rows[i][0];
    EXPECT_NEAR(rtt_rows[i][1], oracle::comp5_marks_per_rtt(rtt, 2, 5e-4), 1e-9 * rtt_rows[i][1]);
    EXPECT_NEAR(sec_rows[i][1] * rtt, rtt_rows[i][1], 1e-9 * rtt_rows[i][1]);
    if (i > 0) {
      EXPECT_GT(rtt_rows[i][1], rtt_rows[i - 1][1]);
      EXPECT_LT(sec_rows[i][1], sec_rows[i - 1][1]);
    }
  }
  EXPECT_NEAR(sec_rows.back()[1], oracle::comp5_asymptote(2, 5e-4), 0.01 * 2772.6);
}

Equilibrium fake_equilibrium(const std::vector<std::pair<double, LawKind>>& rates) {
  Equilibrium eq;
  int i = 0;
  for (const auto& [rate, law] : rates) {
    FlowState f;
    f.id = "f" + std::to_string(i++);
    f.law = law;
    f.rate_bits = rate;
    eq.per_flow.push_back(f);
  }
  return eq;
}

TEST(Starvation, FlagsOnlyWhenAnotherFlowDominates) {
  const auto eq = fake_equilibrium(
      {{5e5, LawKind::classic}, {5e8, LawKind::dctcp}, {2e5, LawKind::compromise5}});
  const auto r = starvation_report(eq, 1e6);
  ASSERT_EQ(r.classic_flags.size(), 1u);
  EXPECT_EQ(r.classic_flags[0].index, 0u);
  ASSERT_EQ(r.scalable_flags.size(), 1u);
  EXPECT_EQ(r.scalable_flags[0].id, "f2");
  EXPECT_TRUE(r.any());

  const auto calm = fake_equilibrium({{5e5, LawKind::classic}, {9e6, LawKind::dctcp}});
  EXPECT_FALSE(starvation_report(calm, 1e6).any());
  EXPECT_THROW(starvation_report(calm, 0.0), DomainError);
}

TEST(Starvation, InvariantUnderRelabelling) {
  auto eq = fake_equilibrium(
      {{5e5, LawKind::classic}, {5e8, LawKind::dctcp}, {2e5, LawKind::compromise5}});
  const auto before = starvation_report(eq, 1e6);
  for (auto& f : eq.per_flow) f.id = "renamed_" + f.id;
  const auto after = starvation_report(eq, 1e6);
  ASSERT_EQ(before.classic_flags.size(), after.classic_flags.size());
  ASSERT_EQ(before.scalable_flags.size(), after.scalable_flags.size());
  for (std::size_t i = 0; i < before.classic_flags.size(); ++i)
    EXPECT_EQ(before.classic_flags[i].index, after.classic_flags[i].index);
  for (std::size_t i = 0; i < before.scalable_flags.size(); ++i)
    EXPECT_EQ(before.scalable_flags[i].index, after.scalable_flags[i].index);
}

TEST(Status, SixRows) {
  const auto rows = status_summary();
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[2].status, "To be resolved");
  EXPECT_EQ(rows[5].status, "Resolved (DualQ Coupled AQM)");
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].index, static_cast<int>(i + 1));
}

}  // namespace
}  // namespace l4scc
