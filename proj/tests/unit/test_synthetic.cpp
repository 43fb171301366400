#include <gtest/gtest.h>

#include <map>
#include <set>

#include "rastershape/rastershape.hpp"

using namespace rastershape;

TEST(Synthetic, Primitives) {
    const auto d = synthetic::disk(21, 21, 10, 10, 3);
    EXPECT_EQ(d.pixel_count(), 29u);
    EXPECT_TRUE(d.at(10, 7));
    EXPECT_FALSE(d.at(13, 12));
    const auto r = synthetic::annulus(41, 41, 20, 20, 5, 10);
    EXPECT_FALSE(r.at(20, 20));
    EXPECT_TRUE(r.at(27, 20));
    const auto b = synthetic::bar(41, 41, 20, 20, 21, 3, 0);
    EXPECT_EQ(b.pixel_count(), 63u);
}

TEST(Synthetic, CorpusShapeAndDeterminism) {
    synthetic::CorpusOptions o;
    o.categories = 4;
    o.per_category = 3;
    o.frame = 128;
    const auto a = synthetic::corpus(o);
    ASSERT_EQ(a.size(), 12u);
    std::map<std::string, int> members;
    std::set<std::string> ids;
    for (const auto& s : a) {
        EXPECT_FALSE(s.empty());
        EXPECT_EQ(s.width(), 128);
        EXPECT_EQ(category_from_stem(s.id()), s.category());
        ++members[s.category()];
        ids.insert(s.id());
    }
    EXPECT_EQ(members.size(), 4u);
    for (const auto& [cat, n] : members) EXPECT_EQ(n, 3) << cat;
    EXPECT_EQ(ids.size(), 12u);

    const auto b = synthetic::corpus(o);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
    o.seed += 1;
    const auto c = synthetic::corpus(o);
    EXPECT_FALSE(a[0] == c[0]);
}

TEST(Synthetic, ToyCorpusAndBlobs) {
    const auto toy = synthetic::toy_corpus();
    ASSERT_EQ(toy.size(), 12u);
    EXPECT_EQ(toy.front().id(), "disk-1");
    EXPECT_EQ(toy.back().id(), "ring-4");
    EXPECT_EQ(synthetic::random_blob(3), synthetic::random_blob(3));
    EXPECT_FALSE(synthetic::random_blob(3).empty());
}
