#include "poloc/crypto/keys.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <random>

#include "poloc/errors.hpp"
#include "poloc/io/atomic_file.hpp"

namespace poloc::crypto {

namespace {

constexpr std::string_view kMagic = "POLOCKF1";

void put_field(Bytes& out, const BigInt& v) {
  Bytes b = to_bytes_be(v);
  put_u32_be(out, static_cast<std::uint32_t>(b.size()));
  put_bytes(out, b);
}

BigInt get_field(ByteReader& in) {
  std::uint32_t len = in.u32_be();
  if (len == 0 || len > 1024) throw FormatError("key file: bad field length");
  return from_bytes_be(in.take(len));
}

std::size_t get_count(ByteReader& in) {
  BigInt v = get_field(in);
  if (v > 1'000'000) throw FormatError("key file: count out of range");
  return v.convert_to<std::size_t>();
}

}  // namespace

GroupKeyMaterial deal_group_keys(const GroupParams& gp, std::size_t t, std::size_t n,
                                 std::uint64_t seed) {
  gp.validate();
  std::mt19937_64 rng(seed);
  BigInt secret = random_below(gp.prime_order_q, rng);
  SecretShares ss = split_secret(secret, t, n, gp, rng());

  GroupKeyMaterial km;
  km.params = gp;
  km.threshold_t = t;
  km.total_n = n;
  km.group_public_key = generator_pow(gp, secret);
  km.shares = ss.share_points;
  for (const auto& s : km.shares) km.share_public_keys.push_back(generator_pow(gp, s.value));
  km.ta_key = KeyPair::generate(gp, rng);
  return km;
}

Bytes serialize_key_material(const GroupKeyMaterial& km) {
  Bytes out(kMagic.begin(), kMagic.end());
  put_field(out, km.params.prime_order_q);
  put_field(out, km.params.generator_g.exponent());
  put_field(out, km.threshold_t);
  put_field(out, km.total_n);
  put_field(out, km.group_public_key.exponent());
  for (std::size_t i = 0; i < km.shares.size(); ++i) {
    put_field(out, km.shares[i].index);
    put_field(out, km.shares[i].value);
    put_field(out, km.share_public_keys[i].exponent());
  }
  put_field(out, km.ta_key.secret);
  put_field(out, km.ta_key.public_key.exponent());
  return out;
}

GroupKeyMaterial deserialize_key_material(std::span<const std::uint8_t> data) {
  ByteReader in(data);
  try {
    auto magic = in.take(kMagic.size());
    if (!std::equal(magic.begin(), magic.end(), kMagic.begin()))
      throw FormatError("key file: bad magic");

    GroupKeyMaterial km;
    km.params.prime_order_q = get_field(in);
    km.params.generator_g = GroupElement::from_exponent(get_field(in));
    km.params.validate();
    km.threshold_t = get_count(in);
    km.total_n = get_count(in);
    if (km.threshold_t == 0 || km.threshold_t > km.total_n)
      throw FormatError("key file: invalid threshold");
    km.group_public_key = GroupElement::from_exponent(get_field(in));
    for (std::size_t i = 0; i < km.total_n; ++i) {
      SharePoint sp;
      sp.index = get_field(in);
      sp.value = get_field(in);
      km.shares.push_back(std::move(sp));
      km.share_public_keys.push_back(GroupElement::from_exponent(get_field(in)));
    }
    BigInt ta_secret = get_field(in);
    BigInt ta_pk = get_field(in);
    km.ta_key = KeyPair::from_secret(km.params, std::move(ta_secret));
    if (km.ta_key.public_key.exponent() != ta_pk)
      throw FormatError("key file: TA key pair mismatch");
    if (!in.empty()) throw FormatError("key file: trailing bytes");
    return km;
  } catch (const std::out_of_range&) {
    throw FormatError("key file: truncated");
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("key file: ") + e.what());
  }
}

void write_key_file(const std::filesystem::path& path, const GroupKeyMaterial& km) {
  io::write_file_atomic(path, serialize_key_material(km));
}

GroupKeyMaterial read_key_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open key file " + path.string());
  Bytes data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return deserialize_key_material(data);
}

}  // namespace poloc::crypto
