// Hand-assembled image payloads for decoder tests.
#pragma once

namespace fixtures {

inline const unsigned char kGray8Png[] = {
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52,
    0x00, 0x00, 0x00, 0x04, 0x00, 0x00, 0x00, 0x04, 0x08, 0x00, 0x00, 0x00, 0x00, 0x8c, 0x9a, 0xc1,
    0xa2, 0x00, 0x00, 0x00, 0x1d, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x60, 0x10, 0x50, 0x30,
    0x60, 0x70, 0x08, 0x48, 0x28, 0x60, 0x68, 0x98, 0xb0, 0x60, 0x03, 0xc3, 0x81, 0x0b, 0x0f, 0x3e,
    0x00, 0x00, 0x30, 0xd4, 0x07, 0x81, 0xa2, 0xfb, 0x9d, 0x93, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45,
    0x4e, 0x44, 0xae, 0x42, 0x60, 0x82,
};
inline const unsigned long kGray8Png_len = 86;

inline const unsigned char kRgb8Png[] = {
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52,
    0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02, 0x08, 0x02, 0x00, 0x00, 0x00, 0xfd, 0xd4, 0x9a,
    0x73, 0x00, 0x00, 0x00, 0x12, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0xf8, 0xcf, 0xc0, 0xc0,
    0x00, 0xc2, 0x0c, 0xff, 0x81, 0x00, 0x00, 0x1f, 0xee, 0x05, 0xfb, 0x0b, 0xd9, 0x68, 0x8b, 0x00,
    0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82,
};
inline const unsigned long kRgb8Png_len = 75;

inline const unsigned char kGray16Png[] = {
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52,
    0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x01, 0x10, 0x00, 0x00, 0x00, 0x00, 0x81, 0xd9, 0xfc,
    0x15, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x60, 0x60, 0xf8, 0xff,
    0x1f, 0x00, 0x03, 0x02, 0x01, 0xff, 0xe6, 0x77, 0x0b, 0xae, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45,
    0x4e, 0x44, 0xae, 0x42, 0x60, 0x82,
};
inline const unsigned long kGray16Png_len = 70;

inline const unsigned char kPalettePng[] = {
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52,
    0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02, 0x08, 0x03, 0x00, 0x00, 0x00, 0x45, 0x68, 0xfd,
    0x16, 0x00, 0x00, 0x00, 0x0c, 0x50, 0x4c, 0x54, 0x45, 0x00, 0x00, 0x00, 0xff, 0xff, 0xff, 0xff,
    0x00, 0x00, 0x00, 0xff, 0x00, 0xbf, 0x3b, 0x21, 0xb5, 0x00, 0x00, 0x00, 0x0e, 0x49, 0x44, 0x41,
    0x54, 0x78, 0x9c, 0x63, 0x60, 0x60, 0x64, 0x60, 0x62, 0x06, 0x00, 0x00, 0x11, 0x00, 0x07, 0x9e,
    0xa2, 0x2a, 0x12, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82,
};
inline const unsigned long kPalettePng_len = 95;

inline const unsigned char kPlainGif[] = {
    0x47, 0x49, 0x46, 0x38, 0x39, 0x61, 0x04, 0x00, 0x04, 0x00, 0x81, 0x00, 0x00, 0x09, 0x09, 0x09,
    0x09, 0x09, 0x09, 0x09, 0x09, 0x09, 0x09, 0x09, 0x09, 0x21, 0xf9, 0x04, 0x00, 0x00, 0x00, 0x00,
    0x00, 0x2c, 0x00, 0x00, 0x00, 0x00, 0x04, 0x00, 0x04, 0x00, 0x81, 0x00, 0x00, 0x00, 0xff, 0xff,
    0xff, 0xff, 0x00, 0x00, 0x00, 0xff, 0x00, 0x02, 0x0a, 0x44, 0xa8, 0x11, 0xa1, 0x46, 0x84, 0x1a,
    0x11, 0x6a, 0x05, 0x00, 0x3b,
};
inline const unsigned long kPlainGif_len = 69;

inline const unsigned char kInterlacedGif[] = {
    0x47, 0x49, 0x46, 0x38, 0x39, 0x61, 0x08, 0x00, 0x08, 0x00, 0x82, 0x00, 0x00, 0x00, 0x00, 0x00,
    0x24, 0x24, 0x24, 0x48, 0x48, 0x48, 0x6c, 0x6c, 0x6c, 0x90, 0x90, 0x90, 0xb4, 0xb4, 0xb4, 0xd8,
    0xd8, 0xd8, 0xfc, 0xfc, 0xfc, 0x2c, 0x00, 0x00, 0x00, 0x00, 0x08, 0x00, 0x08, 0x00, 0x40, 0x03,
    0x31, 0x08, 0x80, 0x00, 0x08, 0x80, 0x00, 0x48, 0x84, 0x44, 0x48, 0x84, 0x44, 0x28, 0x82, 0x22,
    0x28, 0x82, 0x22, 0x68, 0x86, 0x66, 0x68, 0x86, 0x66, 0x18, 0x81, 0x11, 0x18, 0x81, 0x11, 0x38,
    0x83, 0x33, 0x38, 0x83, 0x33, 0x58, 0x85, 0x55, 0x58, 0x85, 0x55, 0x78, 0x87, 0x77, 0x78, 0x87,
    0x77, 0x09, 0x00, 0x3b,
};
inline const unsigned long kInterlacedGif_len = 100;

inline const unsigned char kRectGif[] = {
    0x47, 0x49, 0x46, 0x38, 0x39, 0x61, 0x06, 0x00, 0x06, 0x00, 0x81, 0x01, 0x00, 0x00, 0x00, 0x00,
    0xff, 0xff, 0xff, 0xff, 0x00, 0x00, 0x00, 0xff, 0x00, 0x2c, 0x02, 0x00, 0x01, 0x00, 0x03, 0x00,
    0x04, 0x00, 0x00, 0x02, 0x08, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x40, 0x01, 0x00, 0x3b,
};
inline const unsigned long kRectGif_len = 47;

inline const unsigned char kCompressedGif[] = {
    0x47, 0x49, 0x46, 0x38, 0x39, 0x61, 0x10, 0x00, 0x10, 0x00, 0x81, 0x00, 0x00, 0x00, 0x00, 0x00,
    0x55, 0x55, 0x55, 0xaa, 0xaa, 0xaa, 0xff, 0xff, 0xff, 0x2c, 0x00, 0x00, 0x00, 0x00, 0x10, 0x00,
    0x10, 0x00, 0x00, 0x02, 0x2d, 0x04, 0x12, 0x22, 0x33, 0x86, 0xca, 0x5c, 0x5a, 0xed, 0x4c, 0xf6,
    0xa8, 0x84, 0x35, 0x47, 0xcb, 0x19, 0x21, 0xa8, 0x91, 0x9f, 0xd7, 0x05, 0xe7, 0x95, 0x8e, 0xe8,
    0x26, 0xc0, 0xab, 0xcb, 0xca, 0xc3, 0x6b, 0xb6, 0x25, 0x4e, 0xf7, 0x7b, 0x6d, 0x99, 0xfd, 0x7c,
    0xc2, 0x02, 0x00, 0x3b,
};
inline const unsigned long kCompressedGif_len = 84;

}  // namespace fixtures
