#include <gtest/gtest.h>

#include <map>
#include <random>

#include "ropelab/error.hpp"
#include "ropelab/monoid.hpp"

namespace ropelab {
namespace {

MonoidElement random_element(std::mt19937_64& rng) {
  static const std::vector<Label> labels{"3_1", "4_1", "5_1", "5_2", "6_1", "7_4"};
  std::uniform_int_distribution<int> count(0, 3);
  MonoidElement m;
  for (const Label& l : labels)
    if (int c = count(rng)) m += MonoidElement::prime(l, c);
  return m;
}

TEST(monoid, unit_and_free_generation) {
  const MonoidElement t = MonoidElement::prime("3_1");
  EXPECT_EQ(MonoidElement{} + t, t);
  const MonoidElement sum = t + MonoidElement::prime("4_1");
  EXPECT_EQ(sum.count("3_1"), 1);
  EXPECT_EQ(sum.count("4_1"), 1);
  EXPECT_EQ(sum.size(), 2);
  EXPECT_EQ(sum.to_string(), "3_1 + 4_1");
  EXPECT_EQ(MonoidElement{}.to_string(), "0");
}

TEST(monoid, associative_and_commutative) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const MonoidElement a = random_element(rng), b = random_element(rng), c = random_element(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + b, b + a);
  }
}

TEST(monoid, text_round_trip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const MonoidElement a = random_element(rng);
    EXPECT_EQ(MonoidElement::parse(a.to_string()), a);
  }
  EXPECT_EQ(MonoidElement::parse("2*3_1 + 4_1").count("3_1"), 2);
  EXPECT_THROW(MonoidElement::parse("3_1 +"), RopeError);
  EXPECT_THROW(MonoidElement::prime(""), RopeError);
}

TEST(grothendieck, completion) {
  EXPECT_TRUE(complete(MonoidElement{}).is_zero());
  EXPECT_EQ(complete(MonoidElement::prime("3_1", 2)).coeff("3_1"), 2);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const MonoidElement a = random_element(rng), b = random_element(rng);
    EXPECT_EQ((complete(a) - complete(b)).is_zero(), a == b);
    EXPECT_EQ(complete(a + b), complete(a) + complete(b));
  }
}

TEST(grothendieck, differences) {
  const MonoidElement k = MonoidElement::prime("5_2");
  EXPECT_TRUE(gdiff(k, k).is_zero());
  EXPECT_EQ(gdiff(MonoidElement::prime("3_1"), {}).coeff("3_1"), 1);
  EXPECT_EQ(gdiff({}, MonoidElement::prime("4_1")).coeff("4_1"), -1);
  EXPECT_EQ(gdiff(MonoidElement::prime("3_1"), MonoidElement::prime("4_1")).to_string(), "3_1 - 4_1");
  EXPECT_EQ(GrothendieckElement::parse("3_1 - 4_1"), gdiff(MonoidElement::prime("3_1"), MonoidElement::prime("4_1")));
  EXPECT_EQ(GrothendieckElement{}.to_string(), "0");
}

TEST(grothendieck, group_laws) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const GrothendieckElement a = gdiff(random_element(rng), random_element(rng));
    const GrothendieckElement b = gdiff(random_element(rng), random_element(rng));
    EXPECT_TRUE((a + -a).is_zero());
    EXPECT_EQ(a - b, -(b - a));
    EXPECT_EQ(3 * a, a + a + a);
    EXPECT_EQ(GrothendieckElement::parse(a.to_string()), a);
  }
}

TEST(extend_linearly, evaluates_and_is_linear) {
  const std::map<Label, long> v{{"3_1", 7}, {"4_1", -2}, {"5_1", 1}, {"5_2", 3}, {"6_1", 0}, {"7_4", 4}};
  EXPECT_EQ(extend_linearly(v, GrothendieckElement{}), 0);
  EXPECT_EQ(extend_linearly(v, GrothendieckElement::generator("3_1", 2)), 14);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const GrothendieckElement g1 = gdiff(random_element(rng), random_element(rng));
    const GrothendieckElement g2 = gdiff(random_element(rng), random_element(rng));
    EXPECT_EQ(extend_linearly(v, g1 + g2), extend_linearly(v, g1) + extend_linearly(v, g2));
  }
  EXPECT_THROW(extend_linearly(std::map<Label, long>{}, GrothendieckElement::generator("3_1")), RopeError);
}

}  // namespace
}  // namespace ropelab
