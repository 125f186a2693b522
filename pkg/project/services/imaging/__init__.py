"""Page images: Netpbm codec, binarization, cleanup and synthetic pages."""
