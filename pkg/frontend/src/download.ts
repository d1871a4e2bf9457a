/** Chart download helpers: SVG serialization and client-side PNG raster. */

const PNG_SCALE = 3; // high-resolution raster standing in for print-quality output

export function svgDataUrl(svg: string): string {
  return `data:image/svg+xml;charset=utf-8,${encodeURIComponent(svg)}`;
}

/** Rasterize the chart SVG via an off-screen canvas; browser-only. */
export function pngFromSvg(
  svg: string,
  width: number,
  height: number,
  scale: number = PNG_SCALE,
): Promise<string> {
  return new Promise((resolve, reject) => {
    if (typeof document === "undefined") {
      reject(new Error("PNG export needs a browser canvas"));
      return;
    }
    const image = new Image();
    image.onload = () => {
      const canvas = document.createElement("canvas");
      canvas.width = width * scale;
      canvas.height = height * scale;
      const context = canvas.getContext("2d");
      if (!context) {
        reject(new Error("canvas 2d context unavailable"));
        return;
      }
      context.scale(scale, scale);
      context.drawImage(image, 0, 0);
      resolve(canvas.toDataURL("image/png"));
    };
    image.onerror = () => reject(new Error("could not load chart SVG"));
    image.src = svgDataUrl(svg);
  });
}

export function triggerDownload(url: string, filename: string): void {
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  document.body.appendChild(anchor);
  anchor.click();
  anchor.remove();
}
